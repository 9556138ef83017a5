#include "mvapx/instances.hpp"

#include <algorithm>

#include "mvapx/errors.hpp"

namespace mvapx::instances {

std::string_view to_string(LoopRule rule) { return rule == LoopRule::kMaximal ? "maximal" : "uniform"; }

LoopRule parse_loop_rule(std::string_view text) {
  if (text == "maximal") return LoopRule::kMaximal;
  if (text == "uniform") return LoopRule::kUniform;
  throw Error(ErrorKind::kInvalidInput, "unknown loop rule '" + std::string(text) + "'");
}

void validate_config(const GeneratorConfig& cfg) {
  auto bad = [](const std::string& what) { throw Error(ErrorKind::kInvalidInput, what); };
  if (cfg.n == 0) bad("n must be at least 1");
  if (cfg.r_lo < 1) bad("r_lo must be at least 1");
  if (cfg.r_hi < cfg.r_lo) bad("r_hi must be at least r_lo");
  if (cfg.cost_max < 1) bad("cost_max must be at least 1");
  if (cfg.cost_denominator < 1) bad("cost_denominator must be at least 1");
}

mvtsp::Instance gen_metric_mvtsp(const GeneratorConfig& cfg) {
  validate_config(cfg);
  Rng rng(cfg.seed);
  const std::size_t n = cfg.n;
  std::vector<std::int64_t> c(n * n, 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) c[u * n + v] = c[v * n + u] = rng.uniform(1, cfg.cost_max);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        if (u != v && u != k && v != k) c[u * n + v] = std::min(c[u * n + v], c[u * n + k] + c[k * n + v]);
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::int64_t top = cfg.cost_max;
    if (n > 1) {
      top = INT64_MAX;
      for (std::size_t u = 0; u < n; ++u) {
        if (u != v) top = std::min(top, 2 * c[u * n + v]);
      }
    }
    c[v * n + v] = cfg.loop_rule == LoopRule::kMaximal ? top : rng.uniform(0, top);
  }

  mvtsp::Instance inst;
  inst.n = n;
  inst.costs.reserve(n * n);
  for (std::int64_t x : c) inst.costs.emplace_back(x, cfg.cost_denominator);
  inst.requests.resize(n);
  for (std::size_t v = 0; v < n; ++v) inst.requests[v] = rng.uniform(cfg.r_lo, cfg.r_hi);
  return inst;
}

MetricReport validate_metric(const mvtsp::Instance& inst) {
  MetricReport report;
  const std::size_t n = inst.n;
  if (inst.costs.size() != n * n) {
    report.ok = false;
    report.message = "cost matrix is not n x n";
    return report;
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (inst.cost(u, v) < 0) {
        report.ok = false;
        report.message = "negative cost c(" + std::to_string(u) + "," + std::to_string(v) + ")";
        return report;
      }
      if (inst.cost(u, v) != inst.cost(v, u)) {
        report.ok = false;
        report.message = "asymmetric costs at (" + std::to_string(u) + "," + std::to_string(v) + ")";
        return report;
      }
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = u; w < n; ++w) {
      for (std::size_t v = 0; v < n; ++v) {
        if (inst.cost(u, w) <= inst.cost(u, v) + inst.cost(v, w)) continue;
        report.ok = false;
        report.triple = {u, w, v};
        if (u == w) {
          report.message = "loop inequality fails: c(" + std::to_string(u) + "," + std::to_string(u) + ") = " +
                           mvapx::to_string(inst.cost(u, u)) + " > 2 c(" + std::to_string(u) + "," + std::to_string(v) +
                           ")";
        } else {
          report.message = "triangle inequality fails: c(" + std::to_string(u) + "," + std::to_string(w) +
                           ") > c(" + std::to_string(u) + "," + std::to_string(v) + ") + c(" + std::to_string(v) +
                           "," + std::to_string(w) + ")";
        }
        return report;
      }
    }
  }
  return report;
}

ParamodularSample gen_paramodular(Rng& rng, std::size_t size) {
  if (size > 6) throw Error(ErrorKind::kInvalidInput, "paramodular samples are limited to 6 elements");
  gpoly::GroundSet ground;
  for (std::size_t i = 0; i < size; ++i) ground.names.push_back("s" + std::to_string(i));

  // Coverage function: element i covers a random set of weighted items.
  constexpr std::size_t kItems = 6;
  std::vector<std::int64_t> item_weight(kItems);
  for (auto& w : item_weight) w = rng.uniform(1, 3);
  std::vector<std::uint32_t> covers(size);
  for (auto& mask : covers) {
    mask = static_cast<std::uint32_t>(rng.uniform(1, (1 << kItems) - 1));
  }
  const gpoly::Subset full = ground.full();
  std::vector<std::int64_t> cover(std::size_t{full} + 1, 0);
  for (gpoly::Subset x = 1; x <= full; ++x) {
    std::uint32_t items = 0;
    for (std::size_t i = 0; i < size; ++i) {
      if (x >> i & 1) items |= covers[i];
    }
    for (std::size_t j = 0; j < kItems; ++j) {
      if (items >> j & 1) cover[x] += item_weight[j];
    }
  }

  const bool base = rng.coin();
  std::vector<ExtInt> p(std::size_t{full} + 1);
  std::vector<ExtInt> b(std::size_t{full} + 1);
  for (gpoly::Subset x = 0; x <= full; ++x) {
    b[x] = ExtInt(cover[x]);
    p[x] = ExtInt(base ? cover[full] - cover[full & ~x] : 0);
  }
  gpoly::BorderPair pair = gpoly::make_explicit_unchecked(ground, p, b);

  IntVector witness(size);
  gpoly::Subset prefix = 0;
  for (std::size_t i = 0; i < size; ++i) {
    const gpoly::Subset next = prefix | gpoly::Subset{1} << i;
    witness[i] = cover[next] - cover[prefix];
    prefix = next;
  }

  std::vector<ExtInt> lo(size);
  std::vector<ExtInt> hi(size);
  for (std::size_t i = 0; i < size; ++i) {
    lo[i] = rng.uniform(0, 3) == 0 ? ExtInt::neg_inf() : ExtInt(witness[i] - rng.uniform(0, 2));
    hi[i] = rng.uniform(0, 3) == 0 ? ExtInt::pos_inf() : ExtInt(witness[i] + rng.uniform(0, 2));
  }
  pair = gpoly::intersect_box(pair, lo, hi);

  IntVector shift(size);
  for (std::size_t i = 0; i < size; ++i) {
    shift[i] = -rng.uniform(0, 2);
    witness[i] -= shift[i];
  }
  pair = gpoly::translate(pair, shift);

  for (gpoly::Subset x = 0; x <= full; ++x) {
    const gpoly::Border border = pair.query(x);
    p[x] = border.lower;
    b[x] = border.upper;
  }
  return {gpoly::make_explicit(ground, std::move(p), std::move(b)), std::move(witness)};
}

rounding::BdgpeInstance gen_bdgpe(const BdgpeConfig& cfg) {
  if (cfg.size == 0) throw Error(ErrorKind::kInvalidInput, "size must be at least 1");
  if (cfg.max_hyperedges == 0) throw Error(ErrorKind::kInvalidInput, "max_hyperedges must be at least 1");
  if (cfg.cost_range < 0) throw Error(ErrorKind::kInvalidInput, "cost_range must be nonnegative");
  Rng rng(cfg.seed);
  ParamodularSample sample = gen_paramodular(rng, cfg.size);

  rounding::BdgpeInstance inst{sample.pair, {}, {}, cfg.regime};
  for (std::size_t i = 0; i < cfg.size; ++i) inst.costs.emplace_back(rng.uniform(-cfg.cost_range, cfg.cost_range));

  const auto count = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(cfg.max_hyperedges)));
  for (std::size_t h = 0; h < count; ++h) {
    rounding::Hyperedge edge;
    for (std::size_t i = 0; i < cfg.size; ++i) {
      if (rng.coin()) edge.members.push_back(i);
    }
    if (edge.members.empty()) edge.members.push_back(static_cast<std::size_t>(rng.uniform(0, cfg.size - 1)));
    for (std::size_t k = 0; k < edge.members.size(); ++k) edge.m.push_back(rng.uniform(1, 2));
    const std::int64_t w = edge.weight(sample.witness);
    const std::int64_t f = std::max<std::int64_t>(0, w - rng.uniform(0, 2));
    const std::int64_t g = w + rng.uniform(0, 2);
    if (cfg.regime != rounding::Regime::kUpperOnly) edge.f = f;
    if (cfg.regime != rounding::Regime::kLowerOnly) edge.g = g;
    inst.hyperedges.push_back(std::move(edge));
  }
  rounding::validate(inst);
  return inst;
}

}  // namespace mvapx::instances
