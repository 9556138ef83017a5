#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "mvapx/gpoly.hpp"
#include "mvapx/mvtsp.hpp"
#include "mvapx/random.hpp"
#include "mvapx/rounding.hpp"

namespace mvapx::instances {

enum class LoopRule {
  kMaximal,  // c(v,v) = 2 c_min(v)
  kUniform,  // c(v,v) uniform in [0, 2 c_min(v)]
};

std::string_view to_string(LoopRule rule);
LoopRule parse_loop_rule(std::string_view text);

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t n = 4;
  std::int64_t r_lo = 1;
  std::int64_t r_hi = 3;
  std::int64_t cost_max = 10;        // off-diagonal entries drawn from [1, cost_max]
  std::int64_t cost_denominator = 1; // every cost is divided by this
  LoopRule loop_rule = LoopRule::kUniform;
};

/// Throws Error(kInvalidInput) naming the offending field.
void validate_config(const GeneratorConfig& cfg);

/// Random symmetric matrix closed under shortest paths, loops set by the
/// rule, requests uniform in [r_lo, r_hi]. For n = 1 the loop is drawn from
/// [0, cost_max].
mvtsp::Instance gen_metric_mvtsp(const GeneratorConfig& cfg);

struct MetricReport {
  bool ok = true;
  /// (u, w, v) with c(u, w) > c(u, v) + c(v, w); u == w for a loop.
  std::optional<std::array<std::size_t, 3>> triple;
  std::string message;
};

/// Symmetry, nonnegativity and every triangle inequality, loops included.
MetricReport validate_metric(const mvtsp::Instance& inst);

struct ParamodularSample {
  gpoly::BorderPair pair;  // explicit tables
  IntVector witness;       // a nonnegative integer point of the pair
};

/// Coverage function b; either the polymatroid (0, b) or the base
/// polymatroid of b; then a random box around a greedy vertex and a
/// translation that keeps the vertex nonnegative. size <= 6.
ParamodularSample gen_paramodular(Rng& rng, std::size_t size);

struct BdgpeConfig {
  std::uint64_t seed = 0;
  std::size_t size = 3;
  rounding::Regime regime = rounding::Regime::kBoth;
  std::size_t max_hyperedges = 3;
  std::int64_t cost_range = 5;  // costs uniform in [-cost_range, cost_range]
};

/// Random paramodular pair with random costs and hyperedges whose bounds
/// are drawn around the sample's witness, so an integer solution exists.
rounding::BdgpeInstance gen_bdgpe(const BdgpeConfig& cfg);

}  // namespace mvapx::instances
