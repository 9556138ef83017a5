#include "mvapx/gpoly.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "mvapx/edges.hpp"
#include "mvapx/errors.hpp"

namespace mvapx::gpoly {

Subset GroundSet::full() const {
  return size() >= 64 ? ~Subset{0} : (Subset{1} << size()) - 1;
}

std::size_t GroundSet::index_of(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    throw Error(ErrorKind::kInvalidInput, "unknown ground-set element '" + name + "'");
  }
  return static_cast<std::size_t>(it - names.begin());
}

BorderPair::BorderPair(GroundSet ground, std::shared_ptr<const BorderNode> node)
    : ground_(std::move(ground)), node_(std::move(node)) {
  if (ground_.size() > kMaxGroundSize) {
    throw Error(ErrorKind::kGroundSetTooLarge,
                std::to_string(ground_.size()) + " elements; at most " +
                std::to_string(kMaxGroundSize) + " are supported");
  }
  if (node_->size() != ground_.size()) {
    throw Error(ErrorKind::kInternal, "border evaluator and ground set disagree in size");
  }
}

void require_enumerable(const BorderPair& pair, std::size_t cap) {
  if (pair.size() > cap) {
    throw Error(ErrorKind::kGroundSetTooLarge,
                "ground set has " + std::to_string(pair.size()) +
                " elements; enumeration cap is " + std::to_string(cap));
  }
}

namespace {

class ExplicitNode final : public BorderNode {
 public:
  ExplicitNode(std::size_t size, std::vector<ExtInt> p, std::vector<ExtInt> b)
      : size_(size), p_(std::move(p)), b_(std::move(b)) {}
  std::size_t size() const override { return size_; }
  Border query(Subset x) const override { return {p_[x], b_[x]}; }

 private:
  std::size_t size_;
  std::vector<ExtInt> p_, b_;
};

class DeleteNode final : public BorderNode {
 public:
  DeleteNode(std::shared_ptr<const BorderNode> inner, std::vector<std::size_t> keep)
      : inner_(std::move(inner)), keep_(std::move(keep)) {}
  std::size_t size() const override { return keep_.size(); }
  Border query(Subset x) const override {
    Subset y = 0;
    for (; x != 0; x &= x - 1) y |= Subset{1} << keep_[std::countr_zero(x)];
    return inner_->query(y);
  }

 private:
  std::shared_ptr<const BorderNode> inner_;
  std::vector<std::size_t> keep_;
};

class TranslateNode final : public BorderNode {
 public:
  TranslateNode(std::shared_ptr<const BorderNode> inner, IntVector z)
      : inner_(std::move(inner)), z_(std::move(z)) {}
  std::size_t size() const override { return z_.size(); }
  Border query(Subset x) const override {
    const Border in = inner_->query(x);
    const ExtInt shift = subset_sum(z_, x);
    return {in.lower - shift, in.upper - shift};
  }

 private:
  std::shared_ptr<const BorderNode> inner_;
  IntVector z_;
};

class GraphicNode final : public BorderNode {
 public:
  GraphicNode(std::size_t n, std::int64_t r_hat)
      : n_(n), edges_(complete_edges_with_loops(n)), r_hat_(r_hat) {
    b_full_ = upper(full());
  }
  std::size_t size() const override { return edges_.size(); }
  Border query(Subset x) const override {
    return {ExtInt(b_full_ - upper(full() & ~x)), ExtInt(upper(x))};
  }

 private:
  Subset full() const {
    return edges_.size() >= 64 ? ~Subset{0} : (Subset{1} << edges_.size()) - 1;
  }
  std::int64_t upper(Subset f) const {
    if (f == 0) return 0;
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::vector<bool> covered(n_, false);
    auto find = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    std::int64_t vertices = 0, components = 0;
    for (; f != 0; f &= f - 1) {
      const Edge& e = edges_[std::countr_zero(f)];
      for (std::size_t v : {e.u, e.v}) {
        if (!covered[v]) {
          covered[v] = true;
          ++vertices;
          ++components;
        }
      }
      const std::size_t a = find(e.u), b = find(e.v);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    return vertices - components + r_hat_;
  }

  std::size_t n_;
  std::vector<Edge> edges_;
  std::int64_t r_hat_;
  std::int64_t b_full_ = 0;
};

struct Tables {
  std::vector<ExtInt> p, b;
};

Tables materialize(const BorderPair& pair) {
  require_enumerable(pair);
  const std::size_t count = std::size_t{1} << pair.size();
  Tables t;
  t.p.resize(count);
  t.b.resize(count);
  for (Subset x = 0; x < count; ++x) {
    const Border border = pair.query(x);
    t.p[x] = border.lower;
    t.b[x] = border.upper;
  }
  return t;
}

std::string subset_name(const GroundSet& ground, Subset x) {
  std::string out = "{";
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (x >> i & 1) {
      if (out.size() > 1) out += ",";
      out += ground.names[i];
    }
  }
  return out + "}";
}

ExtInt ext_sum(const std::vector<ExtInt>& v, Subset y) {
  ExtInt total = 0;
  for (; y != 0; y &= y - 1) total = total + v[std::countr_zero(y)];
  return total;
}

}  // namespace

std::string ParamodularViolation::describe(const GroundSet& ground) const {
  const std::string xs = subset_name(ground, x), ys = subset_name(ground, y);
  switch (family) {
    case Family::kBordersAtEmptySet: return "p(empty) and b(empty) must both be 0";
    case Family::kSupermodularP: return "p is not supermodular at X=" + xs + ", Y=" + ys;
    case Family::kSubmodularB: return "b is not submodular at X=" + xs + ", Y=" + ys;
    case Family::kCross:
      return "b(X) - p(Y) >= b(X-Y) - p(Y-X) fails at X=" + xs + ", Y=" + ys;
  }
  return {};
}

namespace {

std::optional<ParamodularViolation> find_violation(const Tables& t) {
  using Family = ParamodularViolation::Family;
  if (t.p[0] != ExtInt(0) || t.b[0] != ExtInt(0)) {
    return ParamodularViolation{Family::kBordersAtEmptySet, 0, 0};
  }
  const Subset count = t.p.size();
  for (Subset x = 0; x < count; ++x) {
    for (Subset y = 0; y < count; ++y) {
      if (t.p[x] + t.p[y] > t.p[x & y] + t.p[x | y]) {
        return ParamodularViolation{Family::kSupermodularP, x, y};
      }
      if (t.b[x] + t.b[y] < t.b[x & y] + t.b[x | y]) {
        return ParamodularViolation{Family::kSubmodularB, x, y};
      }
      if (t.b[x] - t.p[y] < t.b[x & ~y] - t.p[y & ~x]) {
        return ParamodularViolation{Family::kCross, x, y};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<ParamodularViolation> find_paramodular_violation(const BorderPair& pair) {
  return find_violation(materialize(pair));
}

bool is_paramodular(const BorderPair& pair) { return !find_paramodular_violation(pair); }

BorderPair make_explicit_unchecked(GroundSet ground, std::vector<ExtInt> p,
                                   std::vector<ExtInt> b) {
  if (ground.size() > kEnumerationCap) {
    throw Error(ErrorKind::kGroundSetTooLarge,
                "explicit tables need at most " + std::to_string(kEnumerationCap) + " elements");
  }
  const std::size_t count = std::size_t{1} << ground.size();
  if (p.size() != count || b.size() != count) {
    throw Error(ErrorKind::kInvalidInput,
                "border tables must have " + std::to_string(count) + " entries");
  }
  for (std::size_t x = 0; x < count; ++x) {
    if (p[x].is_pos_inf() || b[x].is_neg_inf()) {
      throw Error(ErrorKind::kInvalidInput,
                  "p may not be +inf and b may not be -inf (subset " +
                  subset_name(ground, x) + ")");
    }
  }
  const std::size_t size = ground.size();
  return BorderPair(std::move(ground),
                    std::make_shared<ExplicitNode>(size, std::move(p), std::move(b)));
}

BorderPair make_explicit(GroundSet ground, std::vector<ExtInt> p, std::vector<ExtInt> b) {
  BorderPair pair = make_explicit_unchecked(std::move(ground), std::move(p), std::move(b));
  if (auto v = find_paramodular_violation(pair)) {
    throw Error(ErrorKind::kNotParamodular, v->describe(pair.ground()));
  }
  return pair;
}

std::int64_t subset_sum(const IntVector& x, Subset y) {
  std::int64_t total = 0;
  for (; y != 0; y &= y - 1) {
    if (__builtin_add_overflow(total, x[std::countr_zero(y)], &total)) {
      throw Error(ErrorKind::kInternal, "integer overflow in subset sum");
    }
  }
  return total;
}

bool contains(const BorderPair& pair, const IntVector& x) {
  require_enumerable(pair);
  if (x.size() != pair.size()) {
    throw Error(ErrorKind::kInvalidInput, "vector dimension does not match the ground set");
  }
  const Subset count = Subset{1} << pair.size();
  for (Subset y = 0; y < count; ++y) {
    const Border border = pair.query(y);
    const ExtInt sum = subset_sum(x, y);
    if (border.lower > sum || sum > border.upper) return false;
  }
  return true;
}

BorderPair delete_elements(const BorderPair& pair, Subset z) {
  GroundSet ground;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < pair.size(); ++i) {
    if (z >> i & 1) continue;
    keep.push_back(i);
    ground.names.push_back(pair.ground().names[i]);
  }
  if (keep.size() == pair.size()) return pair;
  return BorderPair(std::move(ground), std::make_shared<DeleteNode>(pair.node(), std::move(keep)));
}

BorderPair translate(const BorderPair& pair, const IntVector& z) {
  if (z.size() != pair.size()) {
    throw Error(ErrorKind::kInvalidInput, "vector dimension does not match the ground set");
  }
  if (std::all_of(z.begin(), z.end(), [](std::int64_t v) { return v == 0; })) return pair;
  return BorderPair(pair.ground(), std::make_shared<TranslateNode>(pair.node(), z));
}

BorderPair contract(const BorderPair& pair, const IntVector& z) {
  if (!contains(pair, z)) {
    throw Error(ErrorKind::kElementNotInPolyhedron, "cannot contract by a vector outside the pair");
  }
  return translate(pair, z);
}

namespace {

void check_box(const BorderPair& pair, const std::vector<ExtInt>& lo,
               const std::vector<ExtInt>& hi) {
  if (lo.size() != pair.size() || hi.size() != pair.size()) {
    throw Error(ErrorKind::kInvalidInput, "box dimension does not match the ground set");
  }
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (lo[i].is_pos_inf() || hi[i].is_neg_inf()) {
      throw Error(ErrorKind::kInvalidInput, "box lower bounds may not be +inf, upper not -inf");
    }
  }
}

}  // namespace

BorderPair intersect_box(const BorderPair& pair, const std::vector<ExtInt>& lo,
                         const std::vector<ExtInt>& hi) {
  check_box(pair, lo, hi);
  Tables t = materialize(pair);
  const std::size_t k = pair.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (lo[i] > hi[i]) {
      throw Error(ErrorKind::kEmptyIntersection,
                  "box is empty at element " + pair.ground().names[i]);
    }
  }
  for (Subset y = 0; y < t.p.size(); ++y) {
    if (ext_sum(lo, y) > t.b[y] || t.p[y] > ext_sum(hi, y)) {
      throw Error(ErrorKind::kEmptyIntersection,
                  "no point of the pair lies in the box (subset " +
                  subset_name(pair.ground(), y) + ")");
    }
  }
  // The max over Z' separates into one choice per coordinate, so the
  // formula is applied one element at a time. For element s, Z' containing
  // s while Z does not costs -hi[s] in p and -lo[s] in b; the converse
  // costs +lo[s] in p and +hi[s] in b.
  for (std::size_t s = 0; s < k; ++s) {
    const Subset bit = Subset{1} << s;
    for (Subset a = 0; a < t.p.size(); ++a) {
      if (a & bit) continue;
      const Subset c = a | bit;
      const ExtInt pa = t.p[a], pc = t.p[c], ba = t.b[a], bc = t.b[c];
      t.p[a] = std::max(pa, pc - hi[s]);
      t.p[c] = std::max(pc, pa + lo[s]);
      t.b[a] = std::min(ba, bc - lo[s]);
      t.b[c] = std::min(bc, ba + hi[s]);
    }
  }
  return BorderPair(pair.ground(), std::make_shared<ExplicitNode>(k, std::move(t.p), std::move(t.b)));
}

Border box_border_by_enumeration(const BorderPair& pair, const std::vector<ExtInt>& lo,
                                 const std::vector<ExtInt>& hi, Subset z) {
  check_box(pair, lo, hi);
  require_enumerable(pair);
  Border out{ExtInt::neg_inf(), ExtInt::pos_inf()};
  const Subset count = Subset{1} << pair.size();
  for (Subset zp = 0; zp < count; ++zp) {
    const Border inner = pair.query(zp);
    const ExtInt lower = inner.lower - ext_sum(hi, zp & ~z) + ext_sum(lo, z & ~zp);
    const ExtInt upper = inner.upper - ext_sum(lo, zp & ~z) + ext_sum(hi, z & ~zp);
    out.lower = std::max(out.lower, lower);
    out.upper = std::min(out.upper, upper);
  }
  return out;
}

BorderPair graphic_mvtsp_border(std::size_t n, const std::vector<std::int64_t>& r) {
  if (n == 0) throw Error(ErrorKind::kInvalidInput, "graphic border needs at least one vertex");
  if (r.size() != n) throw Error(ErrorKind::kInvalidInput, "request vector has wrong length");
  std::int64_t total = 0;
  for (std::int64_t v : r) {
    if (v < 1) throw Error(ErrorKind::kInvalidInput, "requests must be positive");
    if (__builtin_add_overflow(total, v, &total)) {
      throw Error(ErrorKind::kInvalidInput, "total request overflows 64 bits");
    }
  }
  GroundSet ground;
  for (const Edge& e : complete_edges_with_loops(n)) ground.names.push_back(edge_name(e));
  if (ground.size() > kMaxGroundSize) {
    throw Error(ErrorKind::kGroundSetTooLarge,
                std::to_string(n) + " vertices give more than " +
                std::to_string(kMaxGroundSize) + " edges");
  }
  const std::int64_t r_hat = total - static_cast<std::int64_t>(n) + 1;
  return BorderPair(std::move(ground), std::make_shared<GraphicNode>(n, r_hat));
}

void for_each_integer_point(const BorderPair& pair,
                            const std::function<bool(const IntVector&)>& visit) {
  const Tables t = materialize(pair);
  const std::size_t k = pair.size();
  if (t.p[0] > ExtInt(0) || t.b[0] < ExtInt(0)) return;
  std::vector<std::int64_t> lo(k), hi(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Subset single = Subset{1} << i;
    if (!t.p[single].is_finite() || !t.b[single].is_finite()) {
      throw Error(ErrorKind::kInvalidInput, "coordinate " + pair.ground().names[i] +
                  " is unbounded; cannot enumerate integer points");
    }
    lo[i] = t.p[single].value();
    hi[i] = t.b[single].value();
  }
  IntVector x(k, 0);
  std::vector<std::int64_t> sums(t.p.size(), 0);
  bool stop = false;
  // Depth i fixes x[i] and checks every subset whose largest element is i.
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      stop = !visit(x);
      return;
    }
    const Subset top = Subset{1} << i;
    for (std::int64_t v = lo[i]; v <= hi[i] && !stop; ++v) {
      x[i] = v;
      bool ok = true;
      for (Subset sub = 0; sub < top; ++sub) {
        const Subset y = top | sub;
        sums[y] = sums[sub] + v;
        if (t.p[y] > ExtInt(sums[y]) || ExtInt(sums[y]) > t.b[y]) {
          ok = false;
          break;
        }
      }
      if (ok) self(self, i + 1);
    }
  };
  rec(rec, 0);
}

std::vector<IntVector> integer_points(const BorderPair& pair, std::size_t max_points) {
  std::vector<IntVector> out;
  for_each_integer_point(pair, [&](const IntVector& x) {
    if (out.size() == max_points) {
      throw Error(ErrorKind::kBudgetExceeded,
                  "more than " + std::to_string(max_points) + " integer points");
    }
    out.push_back(x);
    return true;
  });
  return out;
}

}  // namespace mvapx::gpoly
