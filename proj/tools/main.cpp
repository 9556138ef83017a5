#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "commands.hpp"

namespace {

using namespace mvapx;
using namespace mvapx::cli;

const CLI::Validator kAtLeastOne(
    [](std::string& text) -> std::string {
      try {
        if (std::stoll(text) >= 1) return {};
      } catch (const std::exception&) {
      }
      return "must be an integer of at least 1, got " + text;
    },
    "INT>=1");

void add_budget(CLI::App* app, oracles::OracleBudget& budget) {
  app->add_option("--budget-vertices", budget.max_vertices, "exact tour oracle: largest n")->capture_default_str();
  app->add_option("--budget-visits", budget.max_total_visits, "exact tour oracle: largest r(V)")->capture_default_str();
  app->add_option("--budget-nodes", budget.max_nodes, "exact tour oracle: search nodes")->capture_default_str();
  app->add_option("--budget-ground", budget.max_ground_size, "exact bdgpe oracle: largest ground set")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximation algorithms for the many-visits TSP and degree-bounded generalized polymatroids"};
  app.require_subcommand(1);
  app.fallthrough();
  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "no human-readable summary on stderr");

  CLI::App* gen = app.add_subcommand("gen", "generate a random instance");
  gen->require_subcommand(1);
  gen->fallthrough();

  GenMvtspArgs gen_mvtsp;
  std::string loops = "uniform";
  CLI::App* gm = gen->add_subcommand("mvtsp", "metric many-visits TSP instance");
  gm->add_option("--n", gen_mvtsp.config.n, "vertices")->check(kAtLeastOne)->capture_default_str();
  gm->add_option("--seed", gen_mvtsp.config.seed)->capture_default_str();
  gm->add_option("--r-min", gen_mvtsp.config.r_lo, "smallest request")->check(kAtLeastOne)->capture_default_str();
  gm->add_option("--r-max", gen_mvtsp.config.r_hi, "largest request")->check(kAtLeastOne)->capture_default_str();
  gm->add_option("--cost-max", gen_mvtsp.config.cost_max, "largest edge cost before closure")
      ->check(kAtLeastOne)
      ->capture_default_str();
  gm->add_option("--denominator", gen_mvtsp.config.cost_denominator, "divide every cost by this")
      ->check(kAtLeastOne)
      ->capture_default_str();
  gm->add_option("--loops", loops, "loop cost rule")->check(CLI::IsMember({"maximal", "uniform"}))->capture_default_str();
  gm->add_option("-o,--output", gen_mvtsp.output, "write to file instead of stdout");

  GenBdgpeArgs gen_bdgpe;
  std::string gen_regime = "both";
  CLI::App* gb = gen->add_subcommand("bdgpe", "paramodular pair with hyperedge bounds");
  gb->add_option("--size", gen_bdgpe.config.size, "ground set size")->check(CLI::Range(1, 6))->capture_default_str();
  gb->add_option("--seed", gen_bdgpe.config.seed)->capture_default_str();
  gb->add_option("--regime", gen_regime)->check(CLI::IsMember({"both", "lower", "upper"}))->capture_default_str();
  gb->add_option("--max-hyperedges", gen_bdgpe.config.max_hyperedges)->capture_default_str();
  gb->add_option("--cost-range", gen_bdgpe.config.cost_range, "costs drawn from [-k, k]")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  gb->add_option("-o,--output", gen_bdgpe.output, "write to file instead of stdout");

  SolveArgs solve;
  std::string solve_regime;
  CLI::App* sv = app.add_subcommand("solve", "run an algorithm on an instance file");
  sv->add_option("instance", solve.instance)->required()->check(CLI::ExistingFile);
  sv->add_option("--alg", solve.algorithm)
      ->check(CLI::IsMember({"apx15", "apx25", "bdgpe", "exact"}))
      ->capture_default_str();
  sv->add_option("--regime", solve_regime, "override the bdgpe regime")
      ->check(CLI::IsMember({"both", "lower", "upper"}));
  sv->add_option("-o,--output", solve.output, "write the solution file");
  sv->add_flag("--oracle", solve.oracle, "compare with the exact optimum");
  add_budget(sv, solve.budget);

  VerifyArgs verify;
  std::string ratio = "3/2";
  CLI::App* vf = app.add_subcommand("verify", "check a solution file against its instance");
  vf->add_option("instance", verify.instance)->required()->check(CLI::ExistingFile);
  vf->add_option("solution", verify.solution)->required()->check(CLI::ExistingFile);
  vf->add_option("--ratio", ratio, "claimed approximation ratio, p/q")->capture_default_str();
  vf->add_flag("--require-oracle", verify.require_oracle, "fail with exit 4 when the oracle is over budget");
  add_budget(vf, verify.budget);

  OracleArgs oracle;
  CLI::App* oc = app.add_subcommand("oracle", "exact optimum by enumeration");
  oc->add_option("instance", oracle.instance)->required()->check(CLI::ExistingFile);
  add_budget(oc, oracle.budget);

  BenchArgs bench;
  CLI::App* bn = app.add_subcommand("bench", "ratio sweep over generated metric instances");
  bn->add_option("--alg", bench.algorithm)->check(CLI::IsMember({"apx15", "apx25"}))->capture_default_str();
  bn->add_option("--sizes", bench.sizes)->check(kAtLeastOne)->delimiter(',')->capture_default_str();
  bn->add_option("--seeds", bench.seeds, "instances per size")->capture_default_str();
  bn->add_option("--seed-base", bench.seed_base)->capture_default_str();
  bn->add_option("--r-max", bench.r_max)->check(kAtLeastOne)->capture_default_str();
  bn->add_option("--cost-max", bench.cost_max)->check(kAtLeastOne)->capture_default_str();
  bn->add_option("-j,--jobs", bench.jobs)->check(kAtLeastOne)->capture_default_str();
  add_budget(bn, bench.budget);

  Channels io{std::cout, std::cerr, false};
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    io.quiet = quiet;
    return report_usage(e.what(), io);
  }
  io.quiet = quiet;

  try {
    if (*gm) {
      gen_mvtsp.config.loop_rule = instances::parse_loop_rule(loops);
      return cmd_gen_mvtsp(gen_mvtsp, io);
    }
    if (*gb) {
      gen_bdgpe.config.regime = rounding::parse_regime(gen_regime);
      return cmd_gen_bdgpe(gen_bdgpe, io);
    }
    if (*sv) {
      if (!solve_regime.empty()) solve.regime = solve_regime;
      return cmd_solve(solve, io);
    }
    if (*vf) {
      verify.ratio = parse_rational(ratio);
      if (verify.ratio < 1) return report_usage("--ratio must be at least 1", io);
      return cmd_verify(verify, io);
    }
    if (*oc) return cmd_oracle(oracle, io);
    if (*bn) return cmd_bench(bench, io);
  } catch (const std::exception& e) {
    return report_error(e, io);
  }
  return kUsage;
}
