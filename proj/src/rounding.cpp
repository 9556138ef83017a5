#include "mvapx/rounding.hpp"

#include <algorithm>
#include <string>

#include "mvapx/errors.hpp"

namespace mvapx::rounding {

using gpoly::Subset;

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kBoth: return "both";
    case Regime::kLowerOnly: return "lower";
    case Regime::kUpperOnly: return "upper";
  }
  return "both";
}

Regime parse_regime(std::string_view text) {
  if (text == "both") return Regime::kBoth;
  if (text == "lower" || text == "lower_only") return Regime::kLowerOnly;
  if (text == "upper" || text == "upper_only") return Regime::kUpperOnly;
  throw Error(ErrorKind::kInvalidInput, "unknown regime '" + std::string(text) + "'");
}

std::int64_t Hyperedge::weight(const IntVector& z) const {
  std::int64_t total = 0;
  for (std::size_t i = 0; i < members.size(); ++i) total += m[i] * z[members[i]];
  return total;
}

std::int64_t Hyperedge::total_multiplicity() const {
  std::int64_t total = 0;
  for (std::int64_t v : m) total += v;
  return total;
}

void validate(const BdgpeInstance& inst) {
  const std::size_t k = inst.pair.size();
  if (inst.costs.size() != k) {
    throw Error(ErrorKind::kInvalidInput, "expected " + std::to_string(k) + " costs, got " +
                std::to_string(inst.costs.size()));
  }
  for (std::size_t h = 0; h < inst.hyperedges.size(); ++h) {
    const Hyperedge& e = inst.hyperedges[h];
    const std::string where = "hyperedge " + std::to_string(h) + ": ";
    if (e.members.empty()) throw Error(ErrorKind::kInvalidInput, where + "no members");
    if (e.m.size() != e.members.size()) {
      throw Error(ErrorKind::kInvalidInput, where + "one multiplicity per member expected");
    }
    for (std::size_t i = 0; i < e.members.size(); ++i) {
      if (e.members[i] >= k || (i > 0 && e.members[i] <= e.members[i - 1])) {
        throw Error(ErrorKind::kInvalidInput, where + "members must be distinct ground elements");
      }
      if (e.m[i] <= 0) throw Error(ErrorKind::kInvalidInput, where + "multiplicities must be positive");
    }
    if ((e.f && *e.f < 0) || (e.g && *e.g < 0)) {
      throw Error(ErrorKind::kInvalidInput, where + "bounds must be nonnegative");
    }
    if (e.f && e.g && *e.f > *e.g) throw Error(ErrorKind::kInvalidInput, where + "f exceeds g");
    if (inst.regime == Regime::kLowerOnly && (!e.f || e.g)) {
      throw Error(ErrorKind::kInvalidInput, where + "lower regime needs f and no g");
    }
    if (inst.regime == Regime::kUpperOnly && (e.f || !e.g)) {
      throw Error(ErrorKind::kInvalidInput, where + "upper regime needs g and no f");
    }
  }
}

std::int64_t delta(const std::vector<Hyperedge>& hyperedges) {
  std::vector<std::int64_t> load;
  for (const Hyperedge& e : hyperedges) {
    for (std::size_t i = 0; i < e.members.size(); ++i) {
      if (e.members[i] >= load.size()) load.resize(e.members[i] + 1, 0);
      load[e.members[i]] += e.m[i];
    }
  }
  return load.empty() ? 0 : *std::max_element(load.begin(), load.end());
}

namespace {

lp::LinearProgram make_lp(const gpoly::BorderPair& pair, std::vector<Rational> costs,
                          const std::vector<Hyperedge>& hyperedges) {
  gpoly::require_enumerable(pair);
  lp::LinearProgram out;
  out.num_vars = pair.size();
  out.objective = std::move(costs);
  const Subset count = Subset{1} << pair.size();
  out.rows.reserve(count - 1 + hyperedges.size());
  for (Subset y = 1; y < count; ++y) {
    const gpoly::Border border = pair.query(y);
    if (!border.lower.is_finite() && !border.upper.is_finite()) continue;
    lp::Row row;
    for (Subset rest = y; rest != 0; rest &= rest - 1) {
      row.terms.push_back({static_cast<std::size_t>(std::countr_zero(rest)), Rational(1)});
    }
    if (border.lower.is_finite()) row.lower = Rational(border.lower.value());
    if (border.upper.is_finite()) row.upper = Rational(border.upper.value());
    out.rows.push_back(std::move(row));
  }
  for (const Hyperedge& e : hyperedges) {
    if (!e.f && !e.g) continue;
    lp::Row row;
    for (std::size_t i = 0; i < e.members.size(); ++i) {
      row.terms.push_back({e.members[i], Rational(e.m[i])});
    }
    if (e.f) row.lower = Rational(*e.f);
    if (e.g) row.upper = Rational(*e.g);
    out.rows.push_back(std::move(row));
  }
  return out;
}

// Hyperedge bounds the regime actually uses.
Hyperedge for_regime(Hyperedge e, Regime regime) {
  if (regime == Regime::kLowerOnly) e.g.reset();
  if (regime == Regime::kUpperOnly) e.f.reset();
  return e;
}

bool relaxable(const Hyperedge& e, Regime regime, std::int64_t d) {
  switch (regime) {
    case Regime::kBoth: return e.total_multiplicity() <= 2 * d - 1;
    case Regime::kLowerOnly: return *e.f <= d - 1;
    case Regime::kUpperOnly: return *e.g + d - 1 >= e.total_multiplicity();
  }
  return false;
}

}  // namespace

lp::LinearProgram build_lp(const BdgpeInstance& inst) {
  validate(inst);
  std::vector<Hyperedge> edges;
  for (const Hyperedge& e : inst.hyperedges) edges.push_back(for_regime(e, inst.regime));
  return make_lp(inst.pair, inst.costs, edges);
}

std::vector<HyperedgeReport> violation_report(const BdgpeInstance& inst, const IntVector& z) {
  if (z.size() != inst.pair.size()) {
    throw Error(ErrorKind::kInvalidInput, "vector dimension does not match the ground set");
  }
  std::vector<HyperedgeReport> out;
  for (const Hyperedge& raw : inst.hyperedges) {
    const Hyperedge e = for_regime(raw, inst.regime);
    HyperedgeReport r;
    r.achieved = e.weight(z);
    r.f = e.f;
    r.g = e.g;
    if (e.f && r.achieved < *e.f) r.violation = r.achieved - *e.f;
    else if (e.g && r.achieved > *e.g) r.violation = r.achieved - *e.g;
    out.push_back(r);
  }
  return out;
}

RoundingResult solve_bdgpe(const BdgpeInstance& inst, const Options& options) {
  validate(inst);
  gpoly::require_enumerable(inst.pair);
  const std::size_t k = inst.pair.size();

  RoundingResult result;
  result.delta = delta(inst.hyperedges);
  result.lp_solve_bound = 2 * k + inst.hyperedges.size() + 1;
  result.z.assign(k, 0);
  result.fates.assign(inst.hyperedges.size(), HyperedgeFate::kKept);

  // Residual problem. Hyperedge members refer to original element indices.
  struct Active {
    std::size_t id;
    Hyperedge e;
  };
  std::vector<Active> active;
  for (std::size_t h = 0; h < inst.hyperedges.size(); ++h) {
    active.push_back({h, for_regime(inst.hyperedges[h], inst.regime)});
  }
  std::vector<std::size_t> elems(k);  // current index -> original index
  for (std::size_t i = 0; i < k; ++i) elems[i] = i;
  gpoly::BorderPair pair = inst.pair;
  const std::int64_t d = result.delta;

  // Drops members whose original index is flagged, then hyperedges left
  // without members.
  auto drop_members = [&](const std::vector<bool>& gone) {
    for (Active& a : active) {
      Hyperedge kept;
      kept.f = a.e.f;
      kept.g = a.e.g;
      for (std::size_t i = 0; i < a.e.members.size(); ++i) {
        if (gone[a.e.members[i]]) continue;
        kept.members.push_back(a.e.members[i]);
        kept.m.push_back(a.e.m[i]);
      }
      a.e = std::move(kept);
    }
  };
  auto drop_empty = [&] {
    std::erase_if(active, [&](const Active& a) {
      if (!a.e.members.empty()) return false;
      result.fates[a.id] = HyperedgeFate::kEmptied;
      return true;
    });
  };

  while (!elems.empty()) {
    if (result.lp_solves == result.lp_solve_bound) {
      throw Error(ErrorKind::kNonTermination,
                  "needed more than " + std::to_string(result.lp_solve_bound) + " LP solves");
    }
    const bool first = result.iterations == 0;

    // Current LP over the remaining elements.
    std::vector<std::size_t> position(k, k);
    for (std::size_t i = 0; i < elems.size(); ++i) position[elems[i]] = i;
    std::vector<Hyperedge> local;
    for (const Active& a : active) {
      Hyperedge e = a.e;
      for (std::size_t& s : e.members) s = position[s];
      local.push_back(std::move(e));
    }
    std::vector<Rational> costs;
    for (std::size_t s : elems) costs.push_back(inst.costs[s]);
    const lp::LinearProgram program = make_lp(pair, costs, local);
    lp::BasicSolution sol;
    try {
      sol = lp::solve(program);
    } catch (const Error& e) {
      if (first || e.kind() != ErrorKind::kInfeasible) throw;
      throw Error(ErrorKind::kInternal,
                  std::string("residual LP became infeasible: ") + e.what());
    }
    ++result.lp_solves;
    if (options.on_lp_solved) options.on_lp_solved(program, sol);
    if (first) result.lp_optimum = sol.objective_value;

    IterationTrace step;
    step.ground_size = elems.size();
    step.lp_value = sol.objective_value;
    step.z_cost = weighted_sum(inst.costs, result.z);

    // Zero coordinates are deleted; floor(x) is added to z.
    const std::size_t n = elems.size();
    IntVector floor_x(n, 0);
    std::vector<bool> zero(k, false), fixed(k, false);
    Subset fix_mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Rational& x = sol.values[i];
      if (x < 0 || x > 1) step.unit_coordinates = false;
      floor_x[i] = floor_to_int64(x);
      result.z[elems[i]] += floor_x[i];
      if (x == 0) {
        zero[elems[i]] = true;
        ++step.deleted;
      }
      if (floor_x[i] >= 1) ++step.rounded;
      // After the first round every coordinate lies in [0, 1]; a rounded
      // coordinate is then final and is fixed along with the zeros.
      if (x == 0 || (!first && floor_x[i] >= 1)) {
        fixed[elems[i]] = true;
        fix_mask |= Subset{1} << i;
      }
    }
    for (Active& a : active) {
      std::int64_t shift = 0;
      for (std::size_t i = 0; i < a.e.members.size(); ++i) {
        shift += a.e.m[i] * floor_x[position[a.e.members[i]]];
      }
      if (a.e.f) *a.e.f -= shift;
      if (a.e.g) *a.e.g -= shift;
    }
    drop_members(zero);
    std::erase_if(active, [&](const Active& a) {
      if (!relaxable(a.e, inst.regime, d)) return false;
      result.fates[a.id] = HyperedgeFate::kRelaxed;
      ++step.relaxed;
      return true;
    });
    drop_empty();

    // Contract by floor(x); fix deleted elements at 0 before removing them,
    // and restrict to the unit cube.
    pair = gpoly::translate(pair, floor_x);
    if (first || fix_mask != 0) {
      std::vector<ExtInt> lo(n, ExtInt(0)), hi(n, ExtInt(1));
      for (std::size_t i = 0; i < n; ++i) {
        if (fix_mask >> i & 1) hi[i] = 0;
      }
      try {
        pair = gpoly::intersect_box(pair, lo, hi);
      } catch (const Error& e) {
        throw Error(ErrorKind::kInternal,
                    std::string("residual point lost while restricting: ") + e.what());
      }
      pair = gpoly::delete_elements(pair, fix_mask);
    }
    drop_members(fixed);
    drop_empty();
    std::erase_if(elems, [&](std::size_t s) { return fixed[s]; });

    result.trace.push_back(step);
    ++result.iterations;
  }

  result.cost = weighted_sum(inst.costs, result.z);
  result.report = violation_report(inst, result.z);
  return result;
}

}  // namespace mvapx::rounding
