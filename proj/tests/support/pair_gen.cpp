#include "pair_gen.hpp"

#include <bit>

namespace mvapx::testing {

using gpoly::Subset;

gpoly::GroundSet names(std::size_t k) {
  gpoly::GroundSet g;
  for (std::size_t i = 0; i < k; ++i) g.names.push_back("s" + std::to_string(i));
  return g;
}

Tables random_paramodular_tables(Rng& rng, std::size_t k, bool allow_infinite) {
  const Subset count = Subset{1} << k;
  // Coverage function: element i covers a random set of weighted items.
  const std::size_t items = 4;
  std::vector<std::int64_t> weight(items);
  for (auto& w : weight) w = rng.uniform(0, 3);
  std::vector<unsigned> cover(k);
  for (auto& c : cover) c = static_cast<unsigned>(rng.uniform(0, (1 << items) - 1));
  auto coverage = [&](Subset x) {
    unsigned u = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (x >> i & 1) u |= cover[i];
    }
    std::int64_t total = 0;
    for (std::size_t j = 0; j < items; ++j) {
      if (u >> j & 1) total += weight[j];
    }
    return total;
  };
  Tables t;
  t.p.resize(count);
  t.b.resize(count);
  const int shape = static_cast<int>(rng.uniform(0, allow_infinite ? 3 : 2));
  for (Subset x = 0; x < count; ++x) {
    const std::int64_t bx = coverage(x);
    t.b[x] = bx;
    switch (shape) {
      case 0: t.p[x] = coverage(count - 1) - coverage((count - 1) & ~x); break;  // base
      case 1: t.p[x] = 0; break;                                                 // polymatroid
      case 2: {                                                                  // box
        t.p[x] = 0;
        t.b[x] = 0;
        break;
      }
      default: t.p[x] = x == 0 ? ExtInt(0) : ExtInt::neg_inf();
    }
  }
  if (shape == 2) {
    std::vector<std::int64_t> lo(k), hi(k);
    for (std::size_t i = 0; i < k; ++i) {
      lo[i] = rng.uniform(-2, 1);
      hi[i] = lo[i] + rng.uniform(0, 2);
    }
    for (Subset x = 0; x < count; ++x) {
      std::int64_t a = 0, b = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (x >> i & 1) {
          a += lo[i];
          b += hi[i];
        }
      }
      t.p[x] = a;
      t.b[x] = b;
    }
  }
  std::vector<std::int64_t> shift(k);
  for (auto& s : shift) s = rng.uniform(-2, 2);
  for (Subset x = 0; x < count; ++x) {
    std::int64_t z = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (x >> i & 1) z += shift[i];
    }
    t.p[x] = t.p[x] - ExtInt(z);
    t.b[x] = t.b[x] - ExtInt(z);
  }
  return t;
}

gpoly::BorderPair random_pair(Rng& rng, std::size_t k, bool allow_infinite) {
  Tables t = random_paramodular_tables(rng, k, allow_infinite);
  return gpoly::make_explicit(names(k), std::move(t.p), std::move(t.b));
}

bool naive_is_paramodular(const Tables& t) {
  if (t.p[0] != ExtInt(0) || t.b[0] != ExtInt(0)) return false;
  const Subset count = t.p.size();
  for (Subset x = 0; x < count; ++x) {
    for (Subset y = 0; y < count; ++y) {
      const bool p_finite = t.p[x].is_finite() && t.p[y].is_finite();
      if (p_finite && (!t.p[x & y].is_finite() || !t.p[x | y].is_finite() ||
                       t.p[x].value() + t.p[y].value() >
                           t.p[x & y].value() + t.p[x | y].value())) {
        return false;
      }
      const bool b_finite = t.b[x].is_finite() && t.b[y].is_finite();
      if (b_finite && (!t.b[x & y].is_finite() || !t.b[x | y].is_finite() ||
                       t.b[x].value() + t.b[y].value() <
                           t.b[x & y].value() + t.b[x | y].value())) {
        return false;
      }
      if (t.b[x].is_finite() && t.p[y].is_finite()) {
        const ExtInt bx = t.b[x & ~y], py = t.p[y & ~x];
        if (!bx.is_finite() || !py.is_finite()) return false;
        if (t.b[x].value() - t.p[y].value() < bx.value() - py.value()) return false;
      }
    }
  }
  return true;
}

std::vector<IntVector> points_in_box(const gpoly::BorderPair& pair, const IntVector& lo,
                                     const IntVector& hi) {
  const std::size_t k = pair.size();
  std::vector<IntVector> out;
  IntVector x = lo;
  for (;;) {
    bool inside = true;
    for (Subset y = 0; y < (Subset{1} << k) && inside; ++y) {
      std::int64_t sum = 0;
      for (std::size_t i = 0; i < k; ++i) {
        if (y >> i & 1) sum += x[i];
      }
      const gpoly::Border border = pair.query(y);
      inside = border.lower <= ExtInt(sum) && ExtInt(sum) <= border.upper;
    }
    if (inside) out.push_back(x);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (x[i] < hi[i]) {
        ++x[i];
        break;
      }
      x[i] = lo[i];
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

void singleton_box(const gpoly::BorderPair& pair, IntVector& lo, IntVector& hi) {
  lo.assign(pair.size(), 0);
  hi.assign(pair.size(), 0);
  for (std::size_t i = 0; i < pair.size(); ++i) {
    const gpoly::Border border = pair.query(Subset{1} << i);
    lo[i] = border.lower.value();
    hi[i] = border.upper.value();
  }
}

}  // namespace mvapx::testing
