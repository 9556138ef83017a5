#include "mvapx/rational.hpp"

#include <charconv>
#include <limits>
#include <sstream>

#include "mvapx/edges.hpp"
#include "mvapx/errors.hpp"
#include "mvapx/ext_int.hpp"

namespace mvapx {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInfeasible: return "Infeasible";
    case ErrorKind::kUnbounded: return "Unbounded";
    case ErrorKind::kNotParamodular: return "NotParamodular";
    case ErrorKind::kGroundSetTooLarge: return "GroundSetTooLarge";
    case ErrorKind::kElementNotInPolyhedron: return "ElementNotInPolyhedron";
    case ErrorKind::kEmptyIntersection: return "EmptyIntersection";
    case ErrorKind::kNonTermination: return "NonTermination";
    case ErrorKind::kOddDegree: return "OddDegree";
    case ErrorKind::kDisconnected: return "Disconnected";
    case ErrorKind::kNotEulerian: return "NotEulerian";
    case ErrorKind::kDeficitVisit: return "DeficitVisit";
    case ErrorKind::kUnbalanced: return "Unbalanced";
    case ErrorKind::kOddCardinality: return "OddCardinality";
    case ErrorKind::kSubsetTooLarge: return "SubsetTooLarge";
    case ErrorKind::kBudgetExceeded: return "BudgetExceeded";
    case ErrorKind::kInvalidInput: return "InvalidInput";
    case ErrorKind::kInternal: return "Internal";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Rational

std::string to_string(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" +
         boost::multiprecision::denominator(q).str();
}

namespace {

bool is_decimal_integer(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

BigInt parse_bigint(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return BigInt(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_decimal_integer(num) || !is_decimal_integer(den) ||
      den.front() == '-' || den.front() == '+') {
    throw Error(ErrorKind::kInvalidInput,
                "malformed rational '" + std::string(text) + "'");
  }
  BigInt d = parse_bigint(den);
  if (d == 0) {
    throw Error(ErrorKind::kInvalidInput,
                "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(parse_bigint(num), d);
}

std::int64_t floor_to_int64(const Rational& q) {
  const BigInt& num = boost::multiprecision::numerator(q);
  const BigInt& den = boost::multiprecision::denominator(q);
  BigInt fl;
  mpz_fdiv_q(fl.backend().data(), num.backend().data(), den.backend().data());
  if (fl > std::numeric_limits<std::int64_t>::max() ||
      fl < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorKind::kInternal, "floor of " + to_string(q) + " exceeds 64 bits");
  }
  return fl.convert_to<std::int64_t>();
}

bool is_integer(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational weighted_sum(std::span<const Rational> weights,
                      std::span<const std::int64_t> values) {
  if (weights.size() != values.size()) {
    throw Error(ErrorKind::kInvalidInput, "weighted_sum: dimension mismatch");
  }
  Rational total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (values[i] != 0) total += weights[i] * values[i];
  }
  return total;
}

// ---------------------------------------------------------------- ExtInt

std::int64_t ExtInt::value() const {
  if (!is_finite()) {
    throw Error(ErrorKind::kInvalidInput, "value() on infinite border " + to_string());
  }
  return value_;
}

ExtInt operator+(ExtInt a, ExtInt b) {
  if (a.is_finite() && b.is_finite()) {
    std::int64_t sum = 0;
    if (__builtin_add_overflow(a.value_, b.value_, &sum)) {
      throw Error(ErrorKind::kInternal, "integer overflow in border arithmetic");
    }
    return ExtInt(sum);
  }
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) {
    throw Error(ErrorKind::kInvalidInput, "undefined sum inf + -inf");
  }
  return a.is_finite() ? b : a;
}

ExtInt operator-(ExtInt a) {
  if (a.is_neg_inf()) return ExtInt::pos_inf();
  if (a.is_pos_inf()) return ExtInt::neg_inf();
  return ExtInt(-a.value_);
}

std::string ExtInt::to_string() const {
  if (is_neg_inf()) return "-inf";
  if (is_pos_inf()) return "inf";
  return std::to_string(value_);
}

ExtInt ExtInt::parse(std::string_view text) {
  if (text == "-inf") return neg_inf();
  if (text == "inf" || text == "+inf") return pos_inf();
  std::int64_t v = 0;
  const char* first = text.data();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw Error(ErrorKind::kInvalidInput, "malformed border value '" + std::string(text) + "'");
  }
  return ExtInt(v);
}

// ---------------------------------------------------------------- edges

std::vector<Edge> complete_edges_with_loops(std::size_t n) {
  std::vector<Edge> edges;
  edges.reserve(n * (n + 1) / 2);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u; v < n; ++v) edges.push_back({u, v});
  }
  return edges;
}

std::size_t edge_index(std::size_t n, std::size_t a, std::size_t b) {
  const Edge e = Edge::make(a, b);
  // Rows 0..u-1 hold n, n-1, ..., n-u+1 edges.
  return e.u * n - e.u * (e.u - 1) / 2 + (e.v - e.u);
}

std::string edge_name(const Edge& e) {
  return std::to_string(e.u) + "-" + std::to_string(e.v);
}

Edge parse_edge_name(const std::string& name) {
  const auto dash = name.find('-');
  std::size_t u = 0, v = 0;
  bool ok = dash != std::string::npos && dash > 0 && dash + 1 < name.size();
  if (ok) {
    auto r1 = std::from_chars(name.data(), name.data() + dash, u);
    auto r2 = std::from_chars(name.data() + dash + 1, name.data() + name.size(), v);
    ok = r1.ec == std::errc() && r1.ptr == name.data() + dash &&
         r2.ec == std::errc() && r2.ptr == name.data() + name.size();
  }
  if (!ok) throw Error(ErrorKind::kInvalidInput, "malformed edge name '" + name + "'");
  return Edge::make(u, v);
}

}  // namespace mvapx
