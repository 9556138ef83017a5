#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mvapx/mvtsp.hpp"
#include "mvapx/rational.hpp"
#include "mvapx/rounding.hpp"

namespace mvapx::approx {

inline constexpr std::size_t kMatchingCap = 20;

/// Single-visit tour (requests ignored): minimum spanning tree, minimum-cost
/// perfect matching on its odd vertices, Eulerian circuit, then skip
/// repeated vertices. n = 1 gives the loop, n = 2 the edge twice.
mvtsp::EdgeMultiplicity christofides(const mvtsp::Instance& inst);

/// Minimum spanning tree over the non-loop edges, Kruskal with ties broken
/// by edge order.
std::vector<Edge> minimum_spanning_tree(const mvtsp::Instance& inst);

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  Rational cost;
};

/// Exact minimum-cost perfect matching on `vertices` (instance costs) by
/// dynamic programming over subsets. Throws Error(kOddCardinality) or
/// Error(kSubsetTooLarge) beyond kMatchingCap vertices.
Matching min_cost_perfect_matching(const mvtsp::Instance& inst, const std::vector<std::size_t>& vertices);

struct TransportationPlan {
  std::size_t n = 0;
  std::vector<std::int64_t> y;  // n x n, y[u * n + v] units shipped u -> v
  Rational cost;

  std::int64_t at(std::size_t u, std::size_t v) const { return y[u * n + v]; }
};

/// Minimum-cost integral plan shipping supply(u) out of every u and
/// demand(v) into every v, including u = v, by successive shortest paths
/// with potentials. Throws Error(kUnbalanced) if the totals differ.
TransportationPlan transportation(const mvtsp::Instance& inst, const IntVector& supply,
                                  const IntVector& demand);

/// z(uv) = y(u,v) + y(v,u) for u != v, z(vv) = y(v,v).
mvtsp::EdgeMultiplicity fold(const TransportationPlan& plan);

struct Apx25Result {
  mvtsp::EdgeMultiplicity tour;
  mvtsp::EdgeMultiplicity single_visit;  // christofides part
  TransportationPlan plan;               // supply = demand = r - 1
  Rational alpha;                        // approximation factor of the single-visit part
};

/// Single-visit tour plus the folded transportation plan for r - 1.
Apx25Result apx25_detailed(const mvtsp::Instance& inst);
mvtsp::EdgeMultiplicity apx25(const mvtsp::Instance& inst);

/// Element problem behind the 1.5-approximation: the graphic base
/// polymatroid over all edges with loops, one lower-bounded hyperedge
/// delta(v) per vertex with f = 2 r(v), loops counted twice.
rounding::BdgpeInstance degree_instance(const mvtsp::Instance& inst);

struct Apx15Result {
  mvtsp::EdgeMultiplicity tour;
  mvtsp::EdgeMultiplicity z;             // rounded element, before matching
  rounding::RoundingResult rounding;
  std::vector<std::size_t> odd_vertices;
  Matching matching;
  mvtsp::CycleCover cover;               // of z plus the matching
  mvtsp::ImplicitTour walk;              // before shortcutting
};

/// Rounds the degree instance, adds a matching on the odd-degree
/// vertices, decomposes into cycles, orders them and shortcuts surplus
/// visits.
Apx15Result apx15_detailed(const mvtsp::Instance& inst, const rounding::Options& options = {});
mvtsp::EdgeMultiplicity apx15(const mvtsp::Instance& inst);

}  // namespace mvapx::approx
