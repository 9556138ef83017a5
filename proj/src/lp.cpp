#include "mvapx/lp.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "mvapx/errors.hpp"

namespace mvapx::lp {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

void check_well_formed(const LinearProgram& lp) {
  if (lp.objective.size() != lp.num_vars) {
    throw Error(ErrorKind::kInvalidInput, "objective has " +
                std::to_string(lp.objective.size()) + " entries for " +
                std::to_string(lp.num_vars) + " variables");
  }
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const Row& row = lp.rows[i];
    if (!row.lower && !row.upper) {
      throw Error(ErrorKind::kInvalidInput,
                  "row " + std::to_string(i) + " has no finite bound");
    }
    for (const Term& t : row.terms) {
      if (t.var >= lp.num_vars) {
        throw Error(ErrorKind::kInvalidInput,
                    "row " + std::to_string(i) + " references variable " +
                    std::to_string(t.var));
      }
    }
  }
}

Rational row_activity(const Row& row, const std::vector<Rational>& x) {
  Rational sum = 0;
  for (const Term& t : row.terms) sum += t.coef * x[t.var];
  return sum;
}

std::size_t rank(std::vector<std::vector<Rational>> v, std::size_t dim) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < dim && r < v.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < v.size() && v[pivot][col] == 0) ++pivot;
    if (pivot == v.size()) continue;
    std::swap(v[r], v[pivot]);
    for (std::size_t i = r + 1; i < v.size(); ++i) {
      if (v[i][col] == 0) continue;
      const Rational f = v[i][col] / v[r][col];
      for (std::size_t j = col; j < dim; ++j) v[i][j] -= f * v[r][j];
    }
    ++r;
  }
  return r;
}

namespace {

constexpr std::int64_t kCoefLimit = std::int64_t{1} << 31;
constexpr std::int64_t kValueLimit = std::int64_t{1} << 62;
constexpr std::size_t kPivotCap = 10'000'000;

bool fits(const BigInt& v, std::int64_t limit) { return v < limit && v > -limit; }

// Integer copy of a row (coefficients and bounds multiplied by one positive
// factor) so most feasibility checks avoid rational arithmetic.
struct ScaledRow {
  bool ok = false;
  std::size_t begin = 0, end = 0;
  std::int64_t lower = 0, upper = 0;
};

struct Artificial {
  std::size_t var;
  bool upper;  // -x[var] >= -M instead of x[var] >= -M
};

class DualSimplex {
 public:
  explicit DualSimplex(const LinearProgram& lp)
      : lp_(lp), n_(lp.num_vars), m2_(2 * lp.rows.size()) {
    scale_rows();
  }

  BasicSolution run();

 private:
  std::size_t num_halfspaces() const { return m2_ + art_.size(); }
  bool exists(std::size_t k) const {
    if (k >= m2_) return true;
    const Row& row = lp_.rows[k / 2];
    return k % 2 == 0 ? row.lower.has_value() : row.upper.has_value();
  }
  Rational rhs(std::size_t k) const {
    if (k >= m2_) return -big_m_;
    const Row& row = lp_.rows[k / 2];
    return k % 2 == 0 ? *row.lower : -*row.upper;
  }
  // g_k . (column col of binv_)
  Rational dot_column(std::size_t k, std::size_t col) const;
  Rational dot_vector(std::size_t k, const std::vector<Rational>& v) const;

  void scale_rows();
  void initial_basis();
  void compute_x();
  std::optional<std::size_t> first_violated();
  void pivot(std::size_t pos, std::size_t entering, const std::vector<Rational>& lambda);
  void drive_out_artificials();

  const LinearProgram& lp_;
  std::size_t n_;
  std::size_t m2_;
  std::vector<ScaledRow> scaled_;
  std::vector<std::size_t> scaled_vars_;
  std::vector<std::int64_t> scaled_coefs_;
  std::vector<Artificial> art_;
  Rational big_m_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> binv_;  // n x n row-major; column c belongs to basis_[c]
  std::vector<Rational> x_;
  std::size_t pivots_ = 0;
};

void DualSimplex::scale_rows() {
  scaled_.resize(lp_.rows.size());
  BigInt bound_r = 0;  // max over rows of |a'|_1 + |finite bounds'|
  for (std::size_t i = 0; i < lp_.rows.size(); ++i) {
    const Row& row = lp_.rows[i];
    BigInt s = 1;
    for (const Term& t : row.terms) s = lcm(s, denominator(t.coef));
    if (row.lower) s = lcm(s, denominator(*row.lower));
    if (row.upper) s = lcm(s, denominator(*row.upper));
    ScaledRow& sr = scaled_[i];
    sr.ok = true;
    sr.begin = scaled_vars_.size();
    BigInt norm = 0;
    for (const Term& t : row.terms) {
      const BigInt a = numerator(t.coef) * (s / denominator(t.coef));
      norm += abs(a);
      if (!fits(a, kCoefLimit)) sr.ok = false;
      scaled_vars_.push_back(t.var);
      scaled_coefs_.push_back(sr.ok ? a.convert_to<std::int64_t>() : 0);
    }
    sr.end = scaled_vars_.size();
    for (const auto& [side, out] : {std::pair{&row.lower, &sr.lower}, {&row.upper, &sr.upper}}) {
      if (!*side) continue;
      const BigInt v = numerator(**side) * (s / denominator(**side));
      norm += abs(v);
      if (fits(v, kValueLimit)) {
        *out = v.convert_to<std::int64_t>();
      } else {
        sr.ok = false;
      }
    }
    bound_r = std::max(bound_r, norm);
  }
  // Every nonempty polyhedron given by these rows has a point whose
  // coordinates are ratios of subdeterminants of the scaled system, so they
  // are bounded by bound_r^n in absolute value.
  BigInt m = 1;
  for (std::size_t j = 0; j < n_; ++j) m *= std::max(bound_r, BigInt(1));
  big_m_ = Rational(m + 1);
}

Rational DualSimplex::dot_column(std::size_t k, std::size_t col) const {
  Rational sum = 0;
  if (k >= m2_) {
    const Artificial& a = art_[k - m2_];
    sum = binv_[a.var * n_ + col];
    return a.upper ? Rational(-sum) : sum;
  }
  for (const Term& t : lp_.rows[k / 2].terms) sum += t.coef * binv_[t.var * n_ + col];
  return k % 2 == 0 ? sum : Rational(-sum);
}

Rational DualSimplex::dot_vector(std::size_t k, const std::vector<Rational>& v) const {
  if (k >= m2_) {
    const Artificial& a = art_[k - m2_];
    return a.upper ? Rational(-v[a.var]) : v[a.var];
  }
  Rational sum = row_activity(lp_.rows[k / 2], v);
  return k % 2 == 0 ? sum : Rational(-sum);
}

void DualSimplex::initial_basis() {
  // Dual feasibility needs y = c^T B^{-1} >= 0. A single-variable half-space
  // a*x_j >= h with sign(a) matching sign(c_j) gives y_j = c_j / a.
  std::vector<std::optional<std::pair<std::size_t, Rational>>> pick(n_);
  for (std::size_t i = 0; i < lp_.rows.size(); ++i) {
    const Row& row = lp_.rows[i];
    if (row.terms.size() != 1 || row.terms[0].coef == 0) continue;
    const std::size_t j = row.terms[0].var;
    if (pick[j]) continue;
    const int c_sign = lp_.objective[j].sign();
    const int a_sign = row.terms[0].coef.sign();
    for (std::size_t side = 0; side < 2 && !pick[j]; ++side) {
      if (!exists(2 * i + side)) continue;
      const int g_sign = side == 0 ? a_sign : -a_sign;
      if (c_sign == 0 || c_sign == g_sign) {
        pick[j] = {2 * i + side, side == 0 ? row.terms[0].coef : Rational(-row.terms[0].coef)};
      }
    }
  }
  for (std::size_t j = 0; j < n_; ++j) {
    if (!pick[j]) {
      const bool upper = lp_.objective[j] < 0;
      art_.push_back({j, upper});
      pick[j] = {m2_ + art_.size() - 1, Rational(upper ? -1 : 1)};
    }
  }
  basis_.resize(n_);
  binv_.assign(n_ * n_, Rational(0));
  for (std::size_t j = 0; j < n_; ++j) {
    basis_[j] = pick[j]->first;
    binv_[j * n_ + j] = 1 / pick[j]->second;
  }
}

void DualSimplex::compute_x() {
  std::vector<Rational> h(n_);
  for (std::size_t c = 0; c < n_; ++c) h[c] = rhs(basis_[c]);
  x_.assign(n_, Rational(0));
  for (std::size_t r = 0; r < n_; ++r) {
    Rational sum = 0;
    for (std::size_t c = 0; c < n_; ++c) {
      const Rational& b = binv_[r * n_ + c];
      if (b != 0 && h[c] != 0) sum += b * h[c];
    }
    x_[r] = sum;
  }
}

std::optional<std::size_t> DualSimplex::first_violated() {
  // x = X / D with a common denominator D.
  BigInt d = 1;
  for (const Rational& v : x_) d = lcm(d, denominator(v));
  bool fast = fits(d, kValueLimit);
  std::vector<std::int64_t> big_x(n_);
  for (std::size_t j = 0; fast && j < n_; ++j) {
    const BigInt v = numerator(x_[j]) * (d / denominator(x_[j]));
    fast = fits(v, kValueLimit);
    if (fast) big_x[j] = v.convert_to<std::int64_t>();
  }
  const __int128 dd = fast ? d.convert_to<std::int64_t>() : 0;

  for (std::size_t i = 0; i < lp_.rows.size(); ++i) {
    const Row& row = lp_.rows[i];
    const ScaledRow& sr = scaled_[i];
    bool below = false, above = false;
    if (fast && sr.ok) {
      __int128 act = 0;
      for (std::size_t t = sr.begin; t < sr.end; ++t) {
        act += static_cast<__int128>(scaled_coefs_[t]) * big_x[scaled_vars_[t]];
      }
      below = row.lower && act < sr.lower * dd;
      above = row.upper && act > sr.upper * dd;
    } else {
      const Rational act = row_activity(row, x_);
      below = row.lower && act < *row.lower;
      above = row.upper && act > *row.upper;
    }
    if (below) return 2 * i;
    if (above) return 2 * i + 1;
  }
  for (std::size_t a = 0; a < art_.size(); ++a) {
    const Rational& v = x_[art_[a].var];
    if (art_[a].upper ? v > big_m_ : v < -big_m_) return m2_ + a;
  }
  return std::nullopt;
}

void DualSimplex::pivot(std::size_t pos, std::size_t entering,
                        const std::vector<Rational>& lambda) {
  const Rational inv = 1 / lambda[pos];
  for (std::size_t r = 0; r < n_; ++r) binv_[r * n_ + pos] *= inv;
  for (std::size_t c = 0; c < n_; ++c) {
    if (c == pos || lambda[c] == 0) continue;
    for (std::size_t r = 0; r < n_; ++r) {
      const Rational& bp = binv_[r * n_ + pos];
      if (bp != 0) binv_[r * n_ + c] -= lambda[c] * bp;
    }
  }
  basis_[pos] = entering;
  if (++pivots_ > kPivotCap) {
    throw Error(ErrorKind::kInternal, "simplex pivot cap exceeded");
  }
}

void DualSimplex::drive_out_artificials() {
  for (std::size_t pos = 0; pos < n_; ++pos) {
    if (basis_[pos] < m2_) continue;
    std::vector<Rational> dir(n_);
    for (std::size_t r = 0; r < n_; ++r) dir[r] = binv_[r * n_ + pos];
    bool moved = false;
    for (int sense : {1, -1}) {
      std::optional<std::size_t> best;
      Rational best_t;
      for (std::size_t k = 0; k < m2_; ++k) {
        if (!exists(k) || std::find(basis_.begin(), basis_.end(), k) != basis_.end()) continue;
        const Rational gd = dot_vector(k, dir) * sense;
        if (gd >= 0) continue;
        const Rational t = (dot_vector(k, x_) - rhs(k)) / -gd;
        if (!best || t < best_t) {
          best = k;
          best_t = t;
        }
      }
      if (!best) continue;
      std::vector<Rational> lambda(n_);
      for (std::size_t c = 0; c < n_; ++c) lambda[c] = dot_column(*best, c);
      pivot(pos, *best, lambda);
      compute_x();
      moved = true;
      break;
    }
    if (!moved) {
      throw Error(ErrorKind::kUnbounded, "feasible region contains a line; no vertex exists");
    }
  }
}

BasicSolution DualSimplex::run() {
  initial_basis();
  for (;;) {
    compute_x();
    const auto entering = first_violated();
    if (!entering) break;
    std::vector<Rational> y(n_);
    for (std::size_t c = 0; c < n_; ++c) {
      Rational sum = 0;
      for (std::size_t r = 0; r < n_; ++r) {
        const Rational& b = binv_[r * n_ + c];
        if (b != 0 && lp_.objective[r] != 0) sum += lp_.objective[r] * b;
      }
      y[c] = sum;
    }
    std::vector<Rational> lambda(n_);
    std::optional<std::size_t> leave;
    Rational best_ratio;
    for (std::size_t c = 0; c < n_; ++c) {
      lambda[c] = dot_column(*entering, c);
      if (lambda[c] <= 0) continue;
      const Rational ratio = y[c] / lambda[c];
      if (!leave || ratio < best_ratio ||
          (ratio == best_ratio && basis_[c] < basis_[*leave])) {
        leave = c;
        best_ratio = ratio;
      }
    }
    if (!leave) {
      std::string what = "no feasible point";
      if (*entering < m2_) what += "; row " + std::to_string(*entering / 2) + " cannot be met";
      throw Error(ErrorKind::kInfeasible, what);
    }
    pivot(*leave, *entering, lambda);
  }

  for (std::size_t pos = 0; pos < n_; ++pos) {
    if (basis_[pos] < m2_) continue;
    Rational y = 0;
    for (std::size_t r = 0; r < n_; ++r) y += lp_.objective[r] * binv_[r * n_ + pos];
    if (y > 0) {
      throw Error(ErrorKind::kUnbounded, "objective unbounded below along variable " +
                  std::to_string(art_[basis_[pos] - m2_].var));
    }
  }
  drive_out_artificials();

  BasicSolution out;
  out.values = x_;
  out.pivots = pivots_;
  out.objective_value = 0;
  for (std::size_t j = 0; j < n_; ++j) out.objective_value += lp_.objective[j] * x_[j];
  for (std::size_t i = 0; i < lp_.rows.size(); ++i) {
    const Row& row = lp_.rows[i];
    const Rational act = row_activity(row, x_);
    if ((row.lower && act == *row.lower) || (row.upper && act == *row.upper)) {
      out.tight_rows.push_back(i);
    }
  }
  return out;
}

}  // namespace

BasicSolution solve(const LinearProgram& lp) {
  check_well_formed(lp);
  if (lp.num_vars == 0) {
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      const Row& row = lp.rows[i];
      if ((row.lower && *row.lower > 0) || (row.upper && *row.upper < 0)) {
        throw Error(ErrorKind::kInfeasible, "row " + std::to_string(i) + " cannot be met");
      }
    }
    BasicSolution out;
    out.objective_value = 0;
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      const Row& row = lp.rows[i];
      if ((row.lower && *row.lower == 0) || (row.upper && *row.upper == 0)) {
        out.tight_rows.push_back(i);
      }
    }
    return out;
  }
  return DualSimplex(lp).run();
}

bool verify_basic(const LinearProgram& lp, const BasicSolution& s) {
  if (s.values.size() != lp.num_vars) return false;
  std::vector<std::vector<Rational>> tight;
  for (const Row& row : lp.rows) {
    for (const Term& t : row.terms) {
      if (t.var >= lp.num_vars) return false;
    }
    const Rational act = row_activity(row, s.values);
    if ((row.lower && act < *row.lower) || (row.upper && act > *row.upper)) return false;
    if ((row.lower && act == *row.lower) || (row.upper && act == *row.upper)) {
      std::vector<Rational> dense(lp.num_vars, Rational(0));
      for (const Term& t : row.terms) dense[t.var] += t.coef;
      tight.push_back(std::move(dense));
    }
  }
  return rank(std::move(tight), lp.num_vars) == lp.num_vars;
}

}  // namespace mvapx::lp
