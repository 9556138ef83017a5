#pragma once

#include <cstdint>
#include <optional>

#include "mvapx/mvtsp.hpp"
#include "mvapx/rational.hpp"
#include "mvapx/rounding.hpp"

namespace mvapx::oracles {

struct OracleBudget {
  std::size_t max_ground_size = 8;
  std::size_t max_vertices = 6;
  std::int64_t max_total_visits = 30;
  std::uint64_t max_nodes = 200'000'000;
};

struct MvtspOptimum {
  mvtsp::EdgeMultiplicity z;
  Rational cost;
  std::uint64_t nodes = 0;
};

/// Minimum-cost feasible multiplicity vector by branch and bound over the
/// edges in lexicographic order. Each vertex's last edge is forced by its
/// remaining degree; partial solutions are cut by remaining degree times
/// half the cheapest incident edge. Ties keep the first optimum found.
/// Throws Error(kBudgetExceeded) when a budget is exceeded.
MvtspOptimum exact_mvtsp(const mvtsp::Instance& inst, const OracleBudget& budget = {});

struct BdgpeOptimum {
  std::optional<IntVector> z;  // empty when no integer point meets every bound
  Rational cost;
  std::uint64_t points = 0;
};

/// Cheapest integer point of the pair meeting every hyperedge bound that
/// is present, by enumeration; ties keep the lexicographically first.
BdgpeOptimum exact_bdgpe(const rounding::BdgpeInstance& inst, const OracleBudget& budget = {});

/// Optimum of the LP relaxation.
Rational lp_lower_bound(const rounding::BdgpeInstance& inst);

/// Optimum of the LP of the degree instance used by the 1.5-approximation.
Rational lp_lower_bound(const mvtsp::Instance& inst);

}  // namespace mvapx::oracles
