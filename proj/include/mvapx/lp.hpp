#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mvapx/rational.hpp"

namespace mvapx::lp {

struct Term {
  std::size_t var = 0;
  Rational coef;
};

/// lower <= sum(coef * x[var]) <= upper; a missing side is unbounded.
struct Row {
  std::vector<Term> terms;
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

/// Minimize objective . x over the rows. Variables are free; sign
/// constraints, if any, are ordinary rows.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Row> rows;
};

struct BasicSolution {
  std::vector<Rational> values;
  std::vector<std::size_t> tight_rows;  // ascending
  Rational objective_value;
  std::size_t pivots = 0;
};

/// Throws Error(kInvalidInput) on dimension mismatch, a term out of range
/// or a row with no finite side.
void check_well_formed(const LinearProgram& lp);

/// Optimal vertex of the feasible region, computed in exact arithmetic.
///
/// Each row side is a half-space g.x >= h (index 2*row for the lower side,
/// 2*row+1 for the upper side). The solver runs the simplex method with
/// Bland's rule on the dual standard form, i.e. a dual simplex over bases of
/// n half-spaces: the lowest-index violated half-space enters, the lowest
/// index wins ratio ties. Throws Error(kInfeasible) or Error(kUnbounded);
/// the latter also covers feasible regions that contain a line.
BasicSolution solve(const LinearProgram& lp);

/// Feasible, and the rows tight at s.values have full column rank.
/// Tightness is recomputed from the values; s.tight_rows is not trusted.
bool verify_basic(const LinearProgram& lp, const BasicSolution& s);

Rational row_activity(const Row& row, const std::vector<Rational>& x);

/// Rank over the rationals of the given dense vectors.
std::size_t rank(std::vector<std::vector<Rational>> vectors, std::size_t dim);

}  // namespace mvapx::lp
