#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "mvapx/gpoly.hpp"
#include "mvapx/lp.hpp"
#include "mvapx/rational.hpp"

namespace mvapx::rounding {

enum class Regime { kBoth, kLowerOnly, kUpperOnly };

std::string_view to_string(Regime regime);
/// "both", "lower", "upper" (also accepts "lower_only", "upper_only").
Regime parse_regime(std::string_view text);

struct Hyperedge {
  std::vector<std::size_t> members;  // ascending element indices
  std::vector<std::int64_t> m;       // positive multiplicity per member
  std::optional<std::int64_t> f;     // lower bound
  std::optional<std::int64_t> g;     // upper bound

  std::int64_t weight(const IntVector& z) const;  // sum of m * z over members
  std::int64_t total_multiplicity() const;
};

struct BdgpeInstance {
  gpoly::BorderPair pair;
  std::vector<Rational> costs;
  std::vector<Hyperedge> hyperedges;
  Regime regime = Regime::kBoth;
};

/// Throws Error(kInvalidInput) when sizes, members, multiplicities or the
/// bounds present do not fit the regime (lower-only: f on every hyperedge
/// and no g; upper-only: the reverse).
void validate(const BdgpeInstance& inst);

/// Largest total multiplicity with which one element appears across all
/// hyperedges.
std::int64_t delta(const std::vector<Hyperedge>& hyperedges);

/// One row per nonempty subset Y in mask order (p(Y) <= x(Y) <= b(Y), infinite
/// sides omitted, rows with no finite side skipped), then one row per
/// hyperedge with at least one bound used by the regime.
lp::LinearProgram build_lp(const BdgpeInstance& inst);

struct HyperedgeReport {
  std::int64_t achieved = 0;
  std::optional<std::int64_t> f;
  std::optional<std::int64_t> g;
  /// achieved - f when below f, achieved - g when above g, else 0.
  std::int64_t violation = 0;
};

std::vector<HyperedgeReport> violation_report(const BdgpeInstance& inst, const IntVector& z);

enum class HyperedgeFate { kKept, kRelaxed, kEmptied };

struct IterationTrace {
  std::size_t ground_size = 0;
  Rational lp_value;      // optimum of this iteration's LP
  Rational z_cost;        // cost of z before this iteration's rounding
  std::size_t deleted = 0;
  std::size_t rounded = 0;  // elements with floor(x) >= 1
  std::size_t relaxed = 0;
  bool unit_coordinates = true;  // every x(s) in [0, 1]
};

struct RoundingResult {
  IntVector z;
  Rational cost;
  Rational lp_optimum;
  std::int64_t delta = 0;
  std::size_t iterations = 0;
  std::size_t lp_solves = 0;
  std::size_t lp_solve_bound = 0;  // 2|S| + |E| + 1
  std::vector<HyperedgeReport> report;
  /// kEmptied hyperedges lost all members before being relaxed; the regime
  /// bounds are not claimed for them.
  std::vector<HyperedgeFate> fates;
  std::vector<IterationTrace> trace;
};

struct Options {
  /// Called after every LP solve with the LP and its solution.
  std::function<void(const lp::LinearProgram&, const lp::BasicSolution&)> on_lp_solved;
};

/// Iterative relaxation. Each round solves the LP for a basic optimum x,
/// fixes and deletes the elements with x(s) = 0, adds floor(x) to z and
/// shifts the pair and the hyperedge bounds by it, drops hyperedges the
/// regime allows to relax, and in the first round restricts the remaining
/// elements to the unit cube. From the second round on, elements that were
/// rounded up are fixed at their new value and deleted as well.
///
/// Throws Error(kInfeasible) if the first LP is empty, Error(kNonTermination)
/// if more than 2|S| + |E| + 1 LPs would be needed.
RoundingResult solve_bdgpe(const BdgpeInstance& inst, const Options& options = {});

}  // namespace mvapx::rounding
