#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace mvapx {

/// Unordered edge of the complete graph with loops, normalized so u <= v.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;

  static Edge make(std::size_t a, std::size_t b) {
    return a <= b ? Edge{a, b} : Edge{b, a};
  }
  bool is_loop() const { return u == v; }
  std::size_t other(std::size_t w) const { return w == u ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Edges of K_n plus one loop per vertex, in lexicographic (u, v) order:
/// (0,0), (0,1), ..., (0,n-1), (1,1), (1,2), ...
std::vector<Edge> complete_edges_with_loops(std::size_t n);

/// Position of edge {a, b} in complete_edges_with_loops(n).
std::size_t edge_index(std::size_t n, std::size_t a, std::size_t b);

/// "u-v" with u <= v; loops are "v-v".
std::string edge_name(const Edge& e);
Edge parse_edge_name(const std::string& name);

}  // namespace mvapx
