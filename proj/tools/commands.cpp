#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "mvapx/approx.hpp"
#include "mvapx/errors.hpp"
#include "mvapx/rounding.hpp"

namespace mvapx::cli {

using io::Json;
using mvtsp::EdgeMultiplicity;

namespace {

class Timer {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const Json& j, Channels& io) { io.out << j.dump(2) << '\n'; }

void put_rational(Json& j, const std::string& key, const Rational& q) {
  j[key] = to_string(q);
  j[key + "_decimal"] = to_double(q);
}

Json edges_json(const EdgeMultiplicity& z) {
  Json j = Json::object();
  for (const auto& [e, k] : z.entries()) j[edge_name(e)] = k;
  return j;
}

std::string decimal(const Rational& q) {
  std::ostringstream s;
  s << std::setprecision(6) << to_double(q);
  return s.str();
}

// Two aligned columns on the log channel.
void table(Channels& io, const std::vector<std::pair<std::string, std::string>>& rows) {
  if (io.quiet) return;
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) io.log << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
}

std::string kind_of_file(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw Error(ErrorKind::kInvalidInput, "file has no \"kind\" field");
  }
  return j.at("kind").get<std::string>();
}

Json oracle_json(const mvtsp::Instance& inst, const Rational& cost, const oracles::OracleBudget& budget,
                 std::optional<Rational>& optimum) {
  Json j;
  try {
    const oracles::MvtspOptimum opt = oracles::exact_mvtsp(inst, budget);
    optimum = opt.cost;
    put_rational(j, "optimum", opt.cost);
    if (opt.cost != 0) put_rational(j, "ratio", cost / opt.cost);
    j["nodes"] = opt.nodes;
  } catch (const Error& e) {
    if (!e.is_cap()) throw;
    j["status"] = "budget_exceeded";
    j["message"] = e.what();
  }
  return j;
}

// Keeps the bounds the requested regime uses; both-bounds needs f and g.
void apply_regime(rounding::BdgpeInstance& inst, const std::string& text) {
  inst.regime = rounding::parse_regime(text);
  for (rounding::Hyperedge& h : inst.hyperedges) {
    if (inst.regime == rounding::Regime::kLowerOnly) h.g.reset();
    if (inst.regime == rounding::Regime::kUpperOnly) h.f.reset();
  }
  rounding::validate(inst);
}

bool within_regime(const rounding::Hyperedge& h, rounding::Regime regime, std::int64_t d, std::int64_t w) {
  switch (regime) {
    case rounding::Regime::kBoth:
      return w >= *h.f - 2 * d + 1 && w <= *h.g + 2 * d - 1;
    case rounding::Regime::kLowerOnly:
      return w >= *h.f - d + 1;
    case rounding::Regime::kUpperOnly:
      return w <= *h.g + d - 1;
  }
  return false;
}

Json optional_int(const std::optional<std::int64_t>& v) { return v ? Json(*v) : Json(nullptr); }

std::string_view fate_name(rounding::HyperedgeFate fate) {
  switch (fate) {
    case rounding::HyperedgeFate::kKept:
      return "kept";
    case rounding::HyperedgeFate::kRelaxed:
      return "relaxed";
    case rounding::HyperedgeFate::kEmptied:
      return "emptied";
  }
  return "";
}

int solve_mvtsp(const SolveArgs& args, const mvtsp::Instance& inst, Channels& io) {
  const Timer timer;
  Json report;
  report["instance_digest"] = io::digest(inst);
  report["algorithm"] = args.algorithm;
  EdgeMultiplicity tour;
  Json details;
  if (args.algorithm == "apx15") {
    const approx::Apx15Result r = approx::apx15_detailed(inst);
    tour = r.tour;
    const auto degree = r.z.degrees(inst.n);
    std::int64_t slack = INT64_MAX;
    for (std::size_t v = 0; v < inst.n; ++v) slack = std::min(slack, degree[v] - 2 * inst.requests[v]);
    details["z"] = edges_json(r.z);
    put_rational(details, "z_cost", r.rounding.cost);
    put_rational(details, "lp_lower_bound", r.rounding.lp_optimum);
    details["min_degree_slack"] = slack;
    details["iterations"] = r.rounding.iterations;
    details["lp_solves"] = r.rounding.lp_solves;
    details["lp_solve_bound"] = r.rounding.lp_solve_bound;
    details["odd_vertices"] = r.odd_vertices;
    put_rational(details, "matching_cost", r.matching.cost);
  } else if (args.algorithm == "apx25") {
    const approx::Apx25Result r = approx::apx25_detailed(inst);
    tour = r.tour;
    put_rational(details, "single_visit_cost", mvtsp::tour_cost(inst, r.single_visit));
    put_rational(details, "transportation_cost", r.plan.cost);
    details["alpha"] = to_string(r.alpha);
  } else if (args.algorithm == "exact") {
    const oracles::MvtspOptimum opt = oracles::exact_mvtsp(inst, args.budget);
    tour = opt.z;
    details["nodes"] = opt.nodes;
  } else {
    return report_usage("--alg " + args.algorithm + " does not apply to an mvtsp instance", io);
  }

  const Rational cost = mvtsp::tour_cost(inst, tour);
  const mvtsp::FeasibilityReport feasibility = mvtsp::check_feasibility(inst, tour);
  put_rational(report, "cost", cost);
  report["feasible"] = {{"ok", feasibility.ok()},
                        {"degrees", feasibility.degrees_ok},
                        {"connected", feasibility.connected}};
  if (!feasibility.ok()) report["feasible"]["message"] = feasibility.message();
  report["tour"] = edges_json(tour);
  report["details"] = details;
  std::optional<Rational> optimum;
  if (args.oracle) report["oracle"] = oracle_json(inst, cost, args.budget, optimum);
  report["wall_time_ms"] = timer.elapsed_ms();

  if (!args.output.empty()) io::write_json(args.output, io::to_json(io::TourSolution{report["instance_digest"], tour}));
  emit(report, io);

  std::vector<std::pair<std::string, std::string>> rows{
      {"algorithm", args.algorithm},
      {"cost", to_string(cost) + " (" + decimal(cost) + ")"},
      {"feasible", feasibility.ok() ? "yes" : "no: " + feasibility.message()},
      {"visits", std::to_string(tour.total())},
  };
  if (optimum) {
    rows.emplace_back("optimum", to_string(*optimum));
    if (*optimum != 0) rows.emplace_back("ratio", to_string(cost / *optimum) + " (" + decimal(cost / *optimum) + ")");
  }
  table(io, rows);
  return kOk;
}

int solve_bdgpe(const SolveArgs& args, rounding::BdgpeInstance inst, Channels& io) {
  if (args.regime) apply_regime(inst, *args.regime);
  const Timer timer;
  Json report;
  report["instance_digest"] = io::digest(inst);
  report["algorithm"] = args.algorithm;
  report["regime"] = std::string(rounding::to_string(inst.regime));
  IntVector z;
  if (args.algorithm == "bdgpe") {
    const rounding::RoundingResult r = rounding::solve_bdgpe(inst);
    z = r.z;
    put_rational(report, "lp_optimum", r.lp_optimum);
    report["delta"] = r.delta;
    report["iterations"] = r.iterations;
    report["lp_solves"] = r.lp_solves;
    report["lp_solve_bound"] = r.lp_solve_bound;
    Json table = Json::array();
    bool within = true;
    for (std::size_t e = 0; e < inst.hyperedges.size(); ++e) {
      const rounding::HyperedgeReport& h = r.report[e];
      const bool ok = within_regime(inst.hyperedges[e], inst.regime, r.delta, h.achieved);
      within = within && ok;
      table.push_back({{"hyperedge", e},
                       {"achieved", h.achieved},
                       {"f", optional_int(h.f)},
                       {"g", optional_int(h.g)},
                       {"violation", h.violation},
                       {"within_bound", ok},
                       {"fate", fate_name(r.fates[e])}});
    }
    report["violations"] = std::move(table);
    report["within_bound"] = within;
  } else if (args.algorithm == "exact") {
    const oracles::BdgpeOptimum opt = oracles::exact_bdgpe(inst, args.budget);
    if (!opt.z) throw Error(ErrorKind::kInfeasible, "no integer point meets every hyperedge bound");
    z = *opt.z;
  } else {
    return report_usage("--alg " + args.algorithm + " does not apply to a bdgpe instance", io);
  }
  const Rational cost = weighted_sum(inst.costs, z);
  report["z"] = z;
  put_rational(report, "cost", cost);
  report["contained"] = gpoly::contains(inst.pair, z);
  std::optional<Rational> optimum;
  if (args.oracle) {
    Json oracle;
    try {
      const oracles::BdgpeOptimum opt = oracles::exact_bdgpe(inst, args.budget);
      oracle["feasible"] = opt.z.has_value();
      if (opt.z) {
        optimum = opt.cost;
        put_rational(oracle, "optimum", opt.cost);
      }
    } catch (const Error& e) {
      if (!e.is_cap()) throw;
      oracle["status"] = "budget_exceeded";
      oracle["message"] = e.what();
    }
    report["oracle"] = std::move(oracle);
  }
  report["wall_time_ms"] = timer.elapsed_ms();

  if (!args.output.empty()) {
    io::write_json(args.output, io::to_json(io::ElementSolution{report["instance_digest"], z}));
  }
  emit(report, io);

  std::vector<std::pair<std::string, std::string>> rows{
      {"algorithm", args.algorithm},
      {"regime", std::string(rounding::to_string(inst.regime))},
      {"cost", to_string(cost) + " (" + decimal(cost) + ")"},
  };
  if (report.contains("lp_optimum")) rows.emplace_back("lp optimum", report["lp_optimum"].get<std::string>());
  if (report.contains("within_bound")) rows.emplace_back("within bound", report["within_bound"].get<bool>() ? "yes" : "no");
  if (optimum) rows.emplace_back("optimum", to_string(*optimum));
  table(io, rows);
  return kOk;
}

struct Check {
  std::string name;
  bool ok;
  std::string detail;
};

int finish_verify(Json report, const std::vector<Check>& checks, Channels& io) {
  Json list = Json::array();
  bool all = true;
  std::vector<std::pair<std::string, std::string>> rows;
  for (const Check& c : checks) {
    all = all && c.ok;
    list.push_back({{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    rows.emplace_back(c.name, std::string(c.ok ? "ok" : "FAILED") + (c.detail.empty() ? "" : "  " + c.detail));
  }
  report["checks"] = std::move(list);
  report["ok"] = all;
  emit(report, io);
  table(io, rows);
  return all ? kOk : kVerifyFailed;
}

int verify_tour(const VerifyArgs& args, const mvtsp::Instance& inst, const io::TourSolution& sol, Channels& io) {
  Json report;
  report["instance_digest"] = sol.instance_digest;
  std::vector<Check> checks;
  const mvtsp::FeasibilityReport f = mvtsp::check_feasibility(inst, sol.edges);
  for (const auto& [e, k] : sol.edges.entries()) {
    if (e.v >= inst.n) {
      checks.push_back({"edges", false, "edge " + edge_name(e) + " leaves the vertex set"});
      return finish_verify(report, checks, io);
    }
  }
  checks.push_back({"degrees", f.degrees_ok, f.degrees_ok ? "" : f.message()});
  checks.push_back({"connected", f.connected, f.connected ? "" : "support is not connected"});
  const Rational cost = mvtsp::tour_cost(inst, sol.edges);
  put_rational(report, "cost", cost);
  report["claimed_ratio"] = to_string(args.ratio);
  try {
    const oracles::MvtspOptimum opt = oracles::exact_mvtsp(inst, args.budget);
    put_rational(report, "optimum", opt.cost);
    const bool ok = cost <= args.ratio * opt.cost;
    std::string detail = "cost " + to_string(cost) + " vs optimum " + to_string(opt.cost);
    if (opt.cost != 0) {
      put_rational(report, "ratio", cost / opt.cost);
      detail += ", ratio " + to_string(cost / opt.cost) + " (" + decimal(cost / opt.cost) + ")";
    }
    checks.push_back({"ratio <= " + to_string(args.ratio), ok, detail});
  } catch (const Error& e) {
    if (!e.is_cap() || args.require_oracle) throw;
    report["oracle"] = {{"status", "budget_exceeded"}, {"message", e.what()}};
  }
  return finish_verify(report, checks, io);
}

int verify_element(const rounding::BdgpeInstance& inst, const io::ElementSolution& sol, Channels& io) {
  if (sol.z.size() != inst.pair.size()) {
    throw Error(ErrorKind::kInvalidInput, "solution has " + std::to_string(sol.z.size()) + " entries for " +
                                              std::to_string(inst.pair.size()) + " elements");
  }
  Json report;
  report["instance_digest"] = sol.instance_digest;
  std::vector<Check> checks;
  checks.push_back({"contained", gpoly::contains(inst.pair, sol.z), ""});
  const std::int64_t d = rounding::delta(inst.hyperedges);
  report["delta"] = d;
  const auto hyper = rounding::violation_report(inst, sol.z);
  for (std::size_t e = 0; e < inst.hyperedges.size(); ++e) {
    checks.push_back({"hyperedge " + std::to_string(e), within_regime(inst.hyperedges[e], inst.regime, d, hyper[e].achieved),
                      "achieved " + std::to_string(hyper[e].achieved) + ", violation " +
                          std::to_string(hyper[e].violation)});
  }
  const Rational cost = weighted_sum(inst.costs, sol.z);
  put_rational(report, "cost", cost);
  const Rational lb = oracles::lp_lower_bound(inst);
  put_rational(report, "lp_optimum", lb);
  checks.push_back({"cost <= lp optimum", cost <= lb, to_string(cost) + " vs " + to_string(lb)});
  return finish_verify(report, checks, io);
}

struct BenchRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  Rational cost;
  std::optional<Rational> optimum;
  bool feasible = false;
  std::size_t iterations = 0;
  std::int64_t max_violation = 0;
  std::string error;
};

BenchRow bench_one(const BenchArgs& args, std::size_t n, std::uint64_t seed) {
  BenchRow row;
  row.n = n;
  row.seed = seed;
  instances::GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.n = n;
  cfg.r_hi = args.r_max;
  cfg.cost_max = args.cost_max;
  try {
    const mvtsp::Instance inst = instances::gen_metric_mvtsp(cfg);
    EdgeMultiplicity tour;
    if (args.algorithm == "apx15") {
      const approx::Apx15Result r = approx::apx15_detailed(inst);
      tour = r.tour;
      row.iterations = r.rounding.iterations;
      const auto degree = r.z.degrees(n);
      for (std::size_t v = 0; v < n; ++v) row.max_violation = std::max(row.max_violation, 2 * inst.requests[v] - degree[v]);
    } else {
      tour = approx::apx25(inst);
    }
    row.cost = mvtsp::tour_cost(inst, tour);
    row.feasible = mvtsp::check_feasible(inst, tour);
    try {
      row.optimum = oracles::exact_mvtsp(inst, args.budget).cost;
    } catch (const Error& e) {
      if (!e.is_cap()) throw;
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

}  // namespace

int report_error(const std::exception& e, Channels& io) {
  int code = kVerifyFailed;
  std::string kind = "Error";
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    kind = std::string(to_string(err->kind()));
    if (err->is_cap()) {
      code = kBudget;
    } else if (err->kind() == ErrorKind::kInfeasible || err->kind() == ErrorKind::kUnbounded) {
      code = kInfeasible;
    } else if (err->kind() == ErrorKind::kInvalidInput || err->kind() == ErrorKind::kNotParamodular) {
      code = kUsage;
    }
  }
  emit(Json{{"error", {{"kind", kind}, {"message", e.what()}}}, {"exit_code", code}}, io);
  if (!io.quiet) io.log << "error: " << e.what() << '\n';
  return code;
}

int report_usage(const std::string& message, Channels& io) {
  emit(Json{{"error", {{"kind", "Usage"}, {"message", message}}}, {"exit_code", static_cast<int>(kUsage)}}, io);
  if (!io.quiet) io.log << "usage error: " << message << '\n';
  return kUsage;
}

int cmd_gen_mvtsp(const GenMvtspArgs& args, Channels& io) {
  const mvtsp::Instance inst = instances::gen_metric_mvtsp(args.config);
  const instances::MetricReport metric = instances::validate_metric(inst);
  if (!metric.ok) throw Error(ErrorKind::kInternal, "generated instance is not metric: " + metric.message);
  const Json j = io::to_json(inst);
  if (args.output.empty()) {
    emit(j, io);
  } else {
    io::write_json(args.output, j);
    emit(Json{{"written", args.output}, {"instance_digest", io::digest(inst)}}, io);
  }
  return kOk;
}

int cmd_gen_bdgpe(const GenBdgpeArgs& args, Channels& io) {
  const rounding::BdgpeInstance inst = instances::gen_bdgpe(args.config);
  const Json j = io::to_json(inst);
  if (args.output.empty()) {
    emit(j, io);
  } else {
    io::write_json(args.output, j);
    emit(Json{{"written", args.output}, {"instance_digest", io::digest(inst)}}, io);
  }
  return kOk;
}

int cmd_solve(const SolveArgs& args, Channels& io) {
  const Json file = io::read_json(args.instance);
  const std::string kind = kind_of_file(file);
  if (kind == "mvtsp") {
    if (args.regime) return report_usage("--regime applies to bdgpe instances only", io);
    return solve_mvtsp(args, io::mvtsp_from_json(file), io);
  }
  if (kind == "bdgpe") return solve_bdgpe(args, io::bdgpe_from_json(file), io);
  return report_usage("unknown instance kind '" + kind + "'", io);
}

int cmd_verify(const VerifyArgs& args, Channels& io) {
  const Json file = io::read_json(args.instance);
  const Json solution = io::read_json(args.solution);
  const std::string kind = kind_of_file(file);
  const std::string sol_kind = kind_of_file(solution);
  if (kind == "mvtsp" && sol_kind == "tour") {
    const mvtsp::Instance inst = io::mvtsp_from_json(file);
    const io::TourSolution sol = io::tour_from_json(solution);
    if (sol.instance_digest != io::digest(inst)) {
      return report_usage("digest mismatch: solution is for " + sol.instance_digest + ", instance is " +
                              io::digest(inst),
                          io);
    }
    return verify_tour(args, inst, sol, io);
  }
  if (kind == "bdgpe" && sol_kind == "element") {
    const rounding::BdgpeInstance inst = io::bdgpe_from_json(file);
    const io::ElementSolution sol = io::element_from_json(solution);
    if (sol.instance_digest != io::digest(inst)) {
      return report_usage("digest mismatch: solution is for " + sol.instance_digest + ", instance is " +
                              io::digest(inst),
                          io);
    }
    return verify_element(inst, sol, io);
  }
  return report_usage("cannot verify a '" + sol_kind + "' solution against a '" + kind + "' instance", io);
}

int cmd_oracle(const OracleArgs& args, Channels& io) {
  const Json file = io::read_json(args.instance);
  const std::string kind = kind_of_file(file);
  Json report;
  if (kind == "mvtsp") {
    const mvtsp::Instance inst = io::mvtsp_from_json(file);
    const oracles::MvtspOptimum opt = oracles::exact_mvtsp(inst, args.budget);
    report["instance_digest"] = io::digest(inst);
    put_rational(report, "optimum", opt.cost);
    report["tour"] = edges_json(opt.z);
    report["nodes"] = opt.nodes;
    if (approx::degree_instance(inst).pair.size() <= gpoly::kEnumerationCap) {
      put_rational(report, "lp_lower_bound", oracles::lp_lower_bound(inst));
    }
    emit(report, io);
    table(io, {{"optimum", to_string(opt.cost)}, {"nodes", std::to_string(opt.nodes)}});
    return kOk;
  }
  if (kind == "bdgpe") {
    const rounding::BdgpeInstance inst = io::bdgpe_from_json(file);
    const oracles::BdgpeOptimum opt = oracles::exact_bdgpe(inst, args.budget);
    report["instance_digest"] = io::digest(inst);
    report["feasible"] = opt.z.has_value();
    report["points"] = opt.points;
    if (opt.z) {
      report["z"] = *opt.z;
      put_rational(report, "optimum", opt.cost);
    }
    try {
      put_rational(report, "lp_lower_bound", oracles::lp_lower_bound(inst));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kInfeasible) throw;
      report["lp_lower_bound"] = nullptr;
    }
    emit(report, io);
    table(io, {{"feasible", opt.z ? "yes" : "no"}, {"optimum", opt.z ? to_string(opt.cost) : "-"}});
    return opt.z ? kOk : kInfeasible;
  }
  return report_usage("unknown instance kind '" + kind + "'", io);
}

int cmd_bench(const BenchArgs& args, Channels& io) {
  const Rational bound = args.algorithm == "apx15" ? Rational(3, 2) : Rational(5, 2);
  std::vector<std::pair<std::size_t, std::uint64_t>> grid;
  for (std::size_t n : args.sizes) {
    for (std::size_t i = 0; i < args.seeds; ++i) grid.emplace_back(n, args.seed_base + i);
  }
  std::vector<BenchRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) rows[i] = bench_one(args, grid[i].first, grid[i].second);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::max<std::size_t>(args.jobs, 1); ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  Json row_json = Json::array();
  Json cells = Json::array();
  bool all_ok = true;
  std::optional<Rational> overall_worst;
  for (std::size_t n : args.sizes) {
    std::size_t count = 0, rated = 0, max_iterations = 0, total_iterations = 0;
    Rational worst = 0, sum = 0;
    std::int64_t max_violation = 0;
    for (const BenchRow& row : rows) {
      if (row.n != n) continue;
      Json r;
      r["n"] = row.n;
      r["seed"] = row.seed;
      if (!row.error.empty()) {
        r["error"] = row.error;
        all_ok = false;
        row_json.push_back(std::move(r));
        continue;
      }
      ++count;
      r["cost"] = to_string(row.cost);
      r["feasible"] = row.feasible;
      r["iterations"] = row.iterations;
      r["max_violation"] = row.max_violation;
      all_ok = all_ok && row.feasible;
      total_iterations += row.iterations;
      max_iterations = std::max(max_iterations, row.iterations);
      max_violation = std::max(max_violation, row.max_violation);
      if (row.optimum) {
        r["optimum"] = to_string(*row.optimum);
        const Rational ratio = *row.optimum == 0 ? Rational(row.cost == 0 ? 1 : 0) : row.cost / *row.optimum;
        if (*row.optimum == 0 && row.cost != 0) all_ok = false;
        put_rational(r, "ratio", ratio);
        ++rated;
        sum += ratio;
        worst = std::max(worst, ratio);
        all_ok = all_ok && ratio <= bound;
      } else {
        r["oracle"] = "budget_exceeded";
      }
      row_json.push_back(std::move(r));
    }
    Json cell;
    cell["n"] = n;
    cell["instances"] = count;
    cell["rated"] = rated;
    if (rated > 0) {
      put_rational(cell, "worst_ratio", worst);
      put_rational(cell, "mean_ratio", sum / static_cast<std::int64_t>(rated));
      overall_worst = overall_worst ? std::max(*overall_worst, worst) : worst;
    }
    cell["max_violation"] = max_violation;
    cell["max_iterations"] = max_iterations;
    cell["mean_iterations"] = count > 0 ? static_cast<double>(total_iterations) / static_cast<double>(count) : 0.0;
    cells.push_back(std::move(cell));
  }

  Json report;
  report["algorithm"] = args.algorithm;
  report["bound"] = to_string(bound);
  report["seeds"] = args.seeds;
  report["seed_base"] = args.seed_base;
  report["r_max"] = args.r_max;
  report["cells"] = cells;
  report["rows"] = std::move(row_json);
  if (overall_worst) put_rational(report, "worst_ratio", *overall_worst);
  report["ok"] = all_ok;
  emit(report, io);

  if (!io.quiet) {
    io.log << std::left << std::setw(4) << "n" << std::setw(8) << "count" << std::setw(14) << "worst ratio"
           << std::setw(12) << "mean ratio" << std::setw(10) << "max viol" << "max iter\n";
    for (const Json& c : cells) {
      io.log << std::setw(4) << c["n"].get<std::size_t>() << std::setw(8) << c["instances"].get<std::size_t>();
      if (c.contains("worst_ratio")) {
        io.log << std::setw(14) << c["worst_ratio"].get<std::string>() << std::setw(12) << std::setprecision(6)
               << c["mean_ratio_decimal"].get<double>();
      } else {
        io.log << std::setw(14) << "-" << std::setw(12) << "-";
      }
      io.log << std::setw(10) << c["max_violation"].get<std::int64_t>() << c["max_iterations"].get<std::size_t>()
             << '\n';
    }
  }
  return all_ok ? kOk : kVerifyFailed;
}

}  // namespace mvapx::cli
