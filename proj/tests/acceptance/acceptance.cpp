// Runs every acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "lp_oracle.hpp"
#include "mvapx/approx.hpp"
#include "mvapx/errors.hpp"
#include "mvapx/instances.hpp"
#include "mvapx/io.hpp"
#include "mvapx/oracles.hpp"
#include "pair_gen.hpp"

namespace {

using namespace mvapx;
using mvtsp::EdgeMultiplicity;

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  const std::size_t threads = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
}

struct Outcome {
  bool pass = true;
  std::size_t cases = 0;
  std::string first_failure;

  void fail(const std::string& why) {
    if (pass) first_failure = why;
    pass = false;
  }
};

int failures = 0;
std::map<int, std::string> lines;  // printed in criterion order

void report(int id, const std::string& name, const Outcome& o, const std::string& detail) {
  std::ostringstream s;
  s << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << name << "  [" << o.cases << " cases"
    << (detail.empty() ? "" : "; " + detail) << "]";
  if (!o.pass) s << "  first failure: " << o.first_failure;
  lines[id] = s.str();
  std::cerr << s.str() << std::endl;
  if (!o.pass) ++failures;
}

void print_lines() {
  for (const auto& [id, line] : lines) std::cout << line << '\n';
}

// Shared bookkeeping for criteria 9 and 10: every rounding run and every LP
// solve inside it.
struct SolveAudit {
  std::atomic<std::size_t> runs{0};
  std::atomic<std::size_t> lp_solves{0};
  std::atomic<std::size_t> over_bound{0};
  std::atomic<std::size_t> non_termination{0};
  std::atomic<std::size_t> not_basic{0};

  rounding::Options options() {
    rounding::Options o;
    o.on_lp_solved = [this](const lp::LinearProgram& lp, const lp::BasicSolution& s) {
      ++lp_solves;
      if (!lp::verify_basic(lp, s)) ++not_basic;
    };
    return o;
  }

  void record(const rounding::RoundingResult& r) {
    ++runs;
    if (r.lp_solves > r.lp_solve_bound) ++over_bound;
  }
};

SolveAudit audit;

std::string ratio_text(const Rational& q) {
  std::ostringstream s;
  s << to_string(q) << " (" << to_double(q) << ")";
  return s.str();
}

// Criteria 1, 2, 5 share one instance sweep.
void tour_sweeps() {
  constexpr std::size_t kInstances = 210;
  struct Row {
    Rational optimum, apx15, apx25, z_cost, lp;
    bool apx15_feasible = false, apx25_feasible = false, degrees_ok = false;
    std::string error;
  };
  std::vector<Row> rows(kInstances);
  parallel_for(kInstances, [&](std::size_t i) {
    Row& row = rows[i];
    instances::GeneratorConfig cfg;
    cfg.seed = 1000 + i;
    cfg.n = 3 + i % 3;
    cfg.r_hi = 4;
    cfg.loop_rule = i % 2 == 0 ? instances::LoopRule::kUniform : instances::LoopRule::kMaximal;
    try {
      const mvtsp::Instance inst = instances::gen_metric_mvtsp(cfg);
      row.optimum = oracles::exact_mvtsp(inst).cost;

      const approx::Apx15Result a = approx::apx15_detailed(inst, audit.options());
      audit.record(a.rounding);
      row.apx15 = mvtsp::tour_cost(inst, a.tour);
      row.apx15_feasible = mvtsp::check_feasible(inst, a.tour);
      const auto degree = a.z.degrees(inst.n);
      row.degrees_ok = true;
      for (std::size_t v = 0; v < inst.n; ++v) row.degrees_ok = row.degrees_ok && degree[v] >= 2 * inst.requests[v] - 1;
      row.z_cost = mvtsp::tour_cost(inst, a.z);
      row.lp = a.rounding.lp_optimum;

      const EdgeMultiplicity b = approx::apx25(inst);
      row.apx25 = mvtsp::tour_cost(inst, b);
      row.apx25_feasible = mvtsp::check_feasible(inst, b);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kNonTermination) ++audit.non_termination;
      row.error = "seed " + std::to_string(cfg.seed) + ": " + e.what();
    }
  });

  Outcome c1, c2, c5;
  Rational worst15 = 0, worst25 = 0;
  for (std::size_t i = 0; i < kInstances; ++i) {
    const Row& row = rows[i];
    const std::string tag = "instance " + std::to_string(i);
    ++c1.cases;
    ++c2.cases;
    ++c5.cases;
    if (!row.error.empty()) {
      c1.fail(row.error);
      c2.fail(row.error);
      c5.fail(row.error);
      continue;
    }
    if (row.optimum > 0) {
      worst15 = std::max(worst15, Rational(row.apx15 / row.optimum));
      worst25 = std::max(worst25, Rational(row.apx25 / row.optimum));
    }
    if (!row.apx15_feasible) c1.fail(tag + " apx15 infeasible");
    if (row.apx15 > Rational(3, 2) * row.optimum) c1.fail(tag + " apx15 cost " + to_string(row.apx15) + " vs opt " + to_string(row.optimum));
    if (!row.apx25_feasible) c2.fail(tag + " apx25 infeasible");
    if (row.apx25 > Rational(5, 2) * row.optimum) c2.fail(tag + " apx25 cost " + to_string(row.apx25) + " vs opt " + to_string(row.optimum));
    if (!row.degrees_ok) c5.fail(tag + " degree below 2r(v)-1");
    if (row.z_cost > row.lp) c5.fail(tag + " cost(z) " + to_string(row.z_cost) + " above lp " + to_string(row.lp));
  }
  report(1, "apx15 feasible and cost <= 3/2 * optimum", c1, "n in {3,4,5}, r <= 4, worst " + ratio_text(worst15));
  report(2, "apx25 feasible and cost <= 5/2 * optimum", c2, "worst " + ratio_text(worst25));
  report(5, "apx15 intermediate z: d_z >= 2r-1, cost(z) <= lp", c5, "");
}

std::int64_t achieved(const rounding::Hyperedge& h, const IntVector& z) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < h.members.size(); ++i) sum += h.m[i] * z[h.members[i]];
  return sum;
}

// Criteria 3 and 4.
Outcome bdgpe_sweep(rounding::Regime regime, std::size_t count, std::uint64_t seed_base) {
  std::vector<std::string> errors(count);
  parallel_for(count, [&](std::size_t i) {
    const std::uint64_t seed = seed_base + i;
    const rounding::BdgpeInstance inst = instances::gen_bdgpe({seed, 1 + i % 5, regime, 3, 5});
    const std::string tag = "seed " + std::to_string(seed);
    try {
      const rounding::RoundingResult r = rounding::solve_bdgpe(inst, audit.options());
      audit.record(r);
      if (!gpoly::contains(inst.pair, r.z)) {
        errors[i] = tag + " z outside the pair";
        return;
      }
      const std::int64_t d = rounding::delta(inst.hyperedges);
      for (std::size_t e = 0; e < inst.hyperedges.size(); ++e) {
        const rounding::Hyperedge& h = inst.hyperedges[e];
        const std::int64_t w = achieved(h, r.z);
        bool ok = true;
        if (regime == rounding::Regime::kBoth) ok = *h.f - 2 * d + 1 <= w && w <= *h.g + 2 * d - 1;
        if (regime == rounding::Regime::kLowerOnly) ok = w >= *h.f - (d - 1);
        if (regime == rounding::Regime::kUpperOnly) ok = w <= *h.g + (d - 1);
        if (!ok) {
          errors[i] = tag + " hyperedge " + std::to_string(e) + " achieves " + std::to_string(w);
          return;
        }
      }
      const Rational cost = weighted_sum(inst.costs, r.z);
      const Rational lb = oracles::lp_lower_bound(inst);
      if (cost > lb) errors[i] = tag + " cost " + to_string(cost) + " above lp " + to_string(lb);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kNonTermination) ++audit.non_termination;
      errors[i] = tag + ": " + e.what();
    }
  });
  Outcome o;
  for (const std::string& e : errors) {
    ++o.cases;
    if (!e.empty()) o.fail(e);
  }
  return o;
}

void contract_add_back() {
  Outcome o;
  Rng rng(4);
  while (o.cases < 500) {
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, 4));
    const gpoly::BorderPair pair = testing::random_pair(rng, k);
    const auto points = gpoly::integer_points(pair, 1'000'000);
    const IntVector& z = points[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(points.size()) - 1))];
    const auto residual = gpoly::integer_points(gpoly::contract(pair, z), 1'000'000);
    const IntVector& x = residual[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(residual.size()) - 1))];
    IntVector sum(k);
    for (std::size_t i = 0; i < k; ++i) sum[i] = x[i] + z[i];
    ++o.cases;
    if (!gpoly::contains(pair, sum)) o.fail("triple " + std::to_string(o.cases));
  }
  report(6, "contract then add back stays in the pair", o, "|S| <= 4");
}

// Spanning connected supports with z(E) = total, without the border functions.
std::set<IntVector> connected_with_total(std::size_t n, std::int64_t total) {
  const auto edges = complete_edges_with_loops(n);
  std::set<IntVector> out;
  IntVector z(edges.size(), 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i + 1 == edges.size()) {
      z[i] = left;
      std::vector<std::size_t> label(n);
      for (std::size_t v = 0; v < n; ++v) label[v] = v;
      std::vector<bool> touched(n, false);
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (z[e] == 0) continue;
        touched[edges[e].u] = touched[edges[e].v] = true;
        const std::size_t a = label[edges[e].u], b = label[edges[e].v];
        for (std::size_t& l : label) {
          if (l == a) l = b;
        }
      }
      bool ok = true;
      for (std::size_t v = 0; v < n; ++v) ok = ok && touched[v] && label[v] == label[0];
      if (ok) out.insert(z);
      return;
    }
    for (std::int64_t k = 0; k <= left; ++k) {
      z[i] = k;
      rec(i + 1, left - k);
    }
    z[i] = 0;
  };
  rec(0, total);
  return out;
}

void graphic_border_points() {
  Outcome o;
  std::size_t points = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    IntVector r(n, 1);
    while (true) {
      std::int64_t total = 0;
      for (std::int64_t v : r) total += v;
      const auto got = gpoly::integer_points(gpoly::graphic_mvtsp_border(n, r), 1'000'000);
      const std::set<IntVector> expected = connected_with_total(n, total);
      ++o.cases;
      points += got.size();
      if (std::set<IntVector>(got.begin(), got.end()) != expected || got.size() != expected.size()) {
        std::ostringstream s;
        s << "n=" << n << " r=(";
        for (std::size_t v = 0; v < n; ++v) s << (v ? "," : "") << r[v];
        s << ") " << got.size() << " vs " << expected.size() << " points";
        o.fail(s.str());
      }
      std::size_t v = 0;
      while (v < n && r[v] == 3) r[v++] = 1;
      if (v == n) break;
      ++r[v];
    }
  }
  report(7, "graphic border points = connected supports of total r(V)", o,
         "all n <= 3, r(v) <= 3; " + std::to_string(points) + " points");
}

void box_formula() {
  Outcome o;
  Rng rng(8);
  std::size_t empty = 0;
  while (o.cases < 200) {
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, 4));
    // Even cases: a box around a point of a finite pair, so the
    // intersection is nonempty. Odd cases: any box, infinite borders allowed.
    const bool centered = o.cases % 2 == 0;
    const gpoly::BorderPair pair = testing::random_pair(rng, k, !centered);
    IntVector center(k, 0);
    if (centered) {
      const auto points = gpoly::integer_points(pair, 1'000'000);
      center = points[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(points.size()) - 1))];
    }
    std::vector<ExtInt> lo(k), hi(k);
    IntVector flo(k), fhi(k);
    for (std::size_t i = 0; i < k; ++i) {
      flo[i] = centered ? center[i] - rng.uniform(0, 2) : rng.uniform(-3, 2);
      fhi[i] = centered ? center[i] + rng.uniform(0, 2) : flo[i] + rng.uniform(0, 3);
      lo[i] = flo[i];
      hi[i] = fhi[i];
    }
    const auto expected = testing::points_in_box(pair, flo, fhi);
    ++o.cases;
    std::vector<IntVector> got;
    try {
      got = gpoly::integer_points(gpoly::intersect_box(pair, lo, hi), 1'000'000);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kEmptyIntersection) throw;
      ++empty;
    }
    if (got != expected) o.fail("case " + std::to_string(o.cases));
  }
  report(8, "box intersection formula = brute-force filtering", o,
         "|S| <= 4; " + std::to_string(empty) + " empty intersections");
}

void lp_vertex_enumeration() {
  Outcome o;
  std::size_t no_vertex = 0;
  for (std::uint64_t seed = 0; o.cases < 100; ++seed) {
    const std::size_t n = 1 + seed % 3;
    const lp::LinearProgram lp = testing::random_bounded_lp(50'000 + seed, n, 1 + seed % 4, 4);
    const auto expected = testing::vertex_enumeration_optimum(lp);
    if (!expected) {
      ++no_vertex;
      try {
        lp::solve(lp);
        o.fail("seed " + std::to_string(seed) + " solved an LP without a vertex");
      } catch (const Error&) {
      }
      continue;
    }
    ++o.cases;
    const lp::BasicSolution s = lp::solve(lp);
    if (s.objective_value != *expected || !lp::verify_basic(lp, s)) o.fail("seed " + std::to_string(seed));
  }
  Outcome sweep;
  sweep.cases = audit.lp_solves;
  if (audit.not_basic > 0) sweep.fail(std::to_string(audit.not_basic.load()) + " solves failed verify_basic");
  if (o.pass && sweep.pass) {
    o.cases += sweep.cases;
  } else if (o.pass) {
    o = sweep;
  }
  report(10, "LP solves are basic; small LPs match vertex enumeration", o,
         std::to_string(audit.lp_solves.load()) + " sweep solves verified, 100 enumerated, " +
             std::to_string(no_vertex) + " vertex-free LPs rejected");
}

struct Shell {
  int code = -1;
  std::string out;
};

Shell shell(const std::string& command) {
  Shell r;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return r;
  char buffer[4096];
  std::size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void reproducibility() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    instances::GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.n = 3 + seed % 3;
    cfg.cost_denominator = 1 + static_cast<std::int64_t>(seed % 2);
    const mvtsp::Instance a = instances::gen_metric_mvtsp(cfg);
    const mvtsp::Instance b = instances::gen_metric_mvtsp(cfg);
    ++o.cases;
    if (io::to_json(a).dump(2) != io::to_json(b).dump(2)) o.fail("mvtsp seed " + std::to_string(seed) + " bytes");
    if (mvtsp::tour_cost(a, approx::apx15(a)) != mvtsp::tour_cost(b, approx::apx15(b)) ||
        mvtsp::tour_cost(a, approx::apx25(a)) != mvtsp::tour_cost(b, approx::apx25(b))) {
      o.fail("mvtsp seed " + std::to_string(seed) + " costs");
    }
    const instances::BdgpeConfig bcfg{seed, 1 + seed % 5, static_cast<rounding::Regime>(seed % 3), 3, 5};
    const rounding::BdgpeInstance x = instances::gen_bdgpe(bcfg);
    const rounding::BdgpeInstance y = instances::gen_bdgpe(bcfg);
    ++o.cases;
    if (io::to_json(x).dump(2) != io::to_json(y).dump(2)) o.fail("bdgpe seed " + std::to_string(seed) + " bytes");
    if (rounding::solve_bdgpe(x).cost != rounding::solve_bdgpe(y).cost) o.fail("bdgpe seed " + std::to_string(seed) + " cost");
  }

  // The same through the command line: files and reported costs.
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "mvapx_acceptance";
  std::filesystem::create_directories(dir);
  const std::string cli = MVAPX_CLI;
  for (int run = 0; run < 2; ++run) {
    const std::string suffix = std::to_string(run);
    shell(cli + " -q gen mvtsp --n 5 --seed 77 --r-max 4 -o " + (dir / ("m" + suffix + ".json")).string());
    shell(cli + " -q gen bdgpe --size 5 --seed 77 -o " + (dir / ("b" + suffix + ".json")).string());
  }
  auto cost_of = [&](const std::string& args) -> std::string {
    const Shell s = shell(cli + " -q solve " + args);
    if (s.code != 0) return "exit " + std::to_string(s.code);
    return io::Json::parse(s.out)["cost"].get<std::string>();
  };
  ++o.cases;
  if (slurp(dir / "m0.json") != slurp(dir / "m1.json") || slurp(dir / "m0.json").empty()) o.fail("cli mvtsp bytes");
  if (slurp(dir / "b0.json") != slurp(dir / "b1.json") || slurp(dir / "b0.json").empty()) o.fail("cli bdgpe bytes");
  for (const char* alg : {"apx15", "apx25"}) {
    const std::string a = cost_of((dir / "m0.json").string() + " --alg " + alg);
    const std::string b = cost_of((dir / "m1.json").string() + " --alg " + alg);
    if (a != b || a.starts_with("exit")) o.fail(std::string("cli ") + alg + " cost " + a + " vs " + b);
  }
  const std::string a = cost_of((dir / "b0.json").string() + " --alg bdgpe");
  const std::string b = cost_of((dir / "b1.json").string() + " --alg bdgpe");
  if (a != b || a.starts_with("exit")) o.fail("cli bdgpe cost " + a + " vs " + b);
  std::filesystem::remove_all(dir);
  report(11, "fixed seeds give identical bytes and costs", o, "library and command line");
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  try {
    tour_sweeps();
    const Outcome both = bdgpe_sweep(rounding::Regime::kBoth, 200, 3000);
    report(3, "both-bounds regime within 2*Delta-1, cost <= lp", both, "|S| <= 5");
    Outcome one_sided = bdgpe_sweep(rounding::Regime::kLowerOnly, 200, 4000);
    const Outcome upper = bdgpe_sweep(rounding::Regime::kUpperOnly, 200, 5000);
    one_sided.cases += upper.cases;
    if (!upper.pass) one_sided.fail(upper.first_failure);
    report(4, "one-sided regimes within Delta-1, cost <= lp", one_sided, "200 lower-only, 200 upper-only");
    contract_add_back();
    graphic_border_points();
    box_formula();

    Outcome term;
    term.cases = audit.runs;
    if (audit.over_bound > 0) term.fail(std::to_string(audit.over_bound.load()) + " runs over the bound");
    if (audit.non_termination > 0) term.fail(std::to_string(audit.non_termination.load()) + " NonTermination errors");
    report(9, "rounding runs within 2|S|+|E|+1 LP solves", term, "all rounding runs above");
    lp_vertex_enumeration();
    reproducibility();
  } catch (const std::exception& e) {
    print_lines();
    std::cout << "FAIL  acceptance run aborted: " << e.what() << std::endl;
    return 1;
  }
  print_lines();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << " in "
            << seconds << " s" << std::endl;
  return failures == 0 ? 0 : 1;
}
