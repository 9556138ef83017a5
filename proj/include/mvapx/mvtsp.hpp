#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvapx/edges.hpp"
#include "mvapx/gpoly.hpp"
#include "mvapx/rational.hpp"

namespace mvapx::mvtsp {

struct Instance {
  std::size_t n = 0;
  std::vector<Rational> costs;  // n x n, row-major, symmetric, diagonal = loops
  IntVector requests;

  const Rational& cost(std::size_t u, std::size_t v) const { return costs[u * n + v]; }
  std::int64_t total_requests() const;
};

/// Sizes agree, costs are nonnegative and requests positive. Metric
/// properties are checked separately by instances::validate_metric.
void validate_shape(const Instance& inst);

/// Nonnegative multiplicity per unordered edge, loops included. Zero
/// entries are never stored.
class EdgeMultiplicity {
 public:
  std::int64_t get(const Edge& e) const;
  void add(const Edge& e, std::int64_t delta);
  void set(const Edge& e, std::int64_t value);

  const std::map<Edge, std::int64_t>& entries() const { return counts_; }
  bool empty() const { return counts_.empty(); }
  std::int64_t total() const;

  /// Degree with a loop counted twice.
  std::vector<std::int64_t> degrees(std::size_t n) const;

  /// Dense vector in complete_edges_with_loops(n) order, and back.
  IntVector dense(std::size_t n) const;
  static EdgeMultiplicity from_dense(std::size_t n, const IntVector& z);

  friend bool operator==(const EdgeMultiplicity&, const EdgeMultiplicity&) = default;

 private:
  std::map<Edge, std::int64_t> counts_;
};

/// True iff the support (over covered vertices) is connected. The empty
/// support counts as connected.
bool support_connected(std::size_t n, const EdgeMultiplicity& z);

struct FeasibilityReport {
  bool degrees_ok = true;
  bool connected = true;
  std::optional<std::size_t> vertex;  // first vertex whose degree is wrong
  std::int64_t degree = 0;
  std::int64_t expected = 0;

  bool ok() const { return degrees_ok && connected; }
  std::string message() const;
};

/// d_z(v) = 2 r(v) for all v, and the support is connected and touches
/// every vertex.
FeasibilityReport check_feasibility(const Instance& inst, const EdgeMultiplicity& z);
bool check_feasible(const Instance& inst, const EdgeMultiplicity& z);

Rational tour_cost(const Instance& inst, const EdgeMultiplicity& z);

/// A simple closed walk: consecutive vertices are joined, and the last is
/// joined back to the first. A single vertex stands for its loop.
struct Cycle {
  std::vector<std::size_t> vertices;
  std::int64_t mu = 0;
};
using CycleCover = std::vector<Cycle>;

/// Edge multiset of one traversal of the cycle.
std::vector<Edge> cycle_edges(const Cycle& c);

EdgeMultiplicity recompose(const CycleCover& cover);

/// Loops become length-one cycles. Other cycles are found by walking from
/// the lowest vertex with remaining degree, always to its lowest neighbour
/// with an unused edge copy (going straight back only if there is no other
/// choice), until a vertex repeats; the cycle is then
/// removed with the largest multiplicity the remaining edges allow.
/// Throws Error(kOddDegree) or Error(kDisconnected).
CycleCover cycle_decompose(std::size_t n, const EdgeMultiplicity& z);

/// Hierholzer's algorithm on a multigraph given as an edge list. Starts at
/// the lowest vertex with an edge and prefers the lowest-numbered unused
/// edge, so the output is deterministic. The returned circuit repeats its
/// first vertex at the end; it is empty for an empty edge list.
/// Throws Error(kNotEulerian).
std::vector<std::size_t> eulerian_circuit(std::size_t n, const std::vector<Edge>& edges);

/// A run of `repeat` back-to-back copies of `pattern`.
struct Segment {
  std::vector<std::size_t> pattern;
  std::int64_t repeat = 1;
};

/// Closed walk stored as segments: the concatenation of all segments,
/// read cyclically. Never expanded in full by the library.
struct ImplicitTour {
  std::vector<std::size_t> base_circuit;  // Eulerian circuit of the cycles
  std::vector<Segment> segments;

  std::vector<std::int64_t> visits(std::size_t n) const;
  std::int64_t length() const;
  /// Edges of the closed walk, aggregated.
  EdgeMultiplicity edges() const;
  /// Explicit vertex sequence; throws Error(kBudgetExceeded) past max_length.
  std::vector<std::size_t> expand(std::size_t max_length) const;
};

/// Walks the Eulerian circuit of the multigraph holding each cycle once;
/// at the first appearance of a vertex u, inserts mu_C - 1 further
/// traversals of every not yet expanded cycle C through u.
ImplicitTour implicit_order(std::size_t n, const CycleCover& cover);

/// Removes the last visits(w) - r(w) occurrences of every vertex w, joining
/// its neighbours directly. Throws Error(kDeficitVisit) if some vertex has
/// fewer than r(w) visits.
EdgeMultiplicity shortcut(const Instance& inst, const ImplicitTour& tour);

/// The shortcut tour in segment form, for inspection.
ImplicitTour shortcut_walk(std::size_t n, const ImplicitTour& tour, const IntVector& r);

}  // namespace mvapx::mvtsp
