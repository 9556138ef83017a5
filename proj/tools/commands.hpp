#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mvapx/instances.hpp"
#include "mvapx/io.hpp"
#include "mvapx/oracles.hpp"

namespace mvapx::cli {

enum ExitCode : int {
  kOk = 0,
  kVerifyFailed = 1,
  kUsage = 2,
  kInfeasible = 3,
  kBudget = 4,
};

/// Machine-readable JSON goes to `out`; the human summary goes to `log`
/// unless quiet.
struct Channels {
  std::ostream& out;
  std::ostream& log;
  bool quiet = false;
};

struct GenMvtspArgs {
  instances::GeneratorConfig config;
  std::string output;  // empty: stdout
};

struct GenBdgpeArgs {
  instances::BdgpeConfig config;
  std::string output;
};

struct SolveArgs {
  std::string instance;
  std::string algorithm = "apx15";      // apx15, apx25, bdgpe, exact
  std::optional<std::string> regime;    // overrides the instance's regime
  std::string output;                   // solution file
  bool oracle = false;
  oracles::OracleBudget budget;
};

struct VerifyArgs {
  std::string instance;
  std::string solution;
  Rational ratio{3, 2};                 // claimed bound against the exact optimum
  bool require_oracle = false;
  oracles::OracleBudget budget;
};

struct OracleArgs {
  std::string instance;
  oracles::OracleBudget budget;
};

struct BenchArgs {
  std::string algorithm = "apx15";  // apx15, apx25
  std::vector<std::size_t> sizes{3, 4, 5};
  std::size_t seeds = 30;
  std::uint64_t seed_base = 0;
  std::int64_t r_max = 4;
  std::int64_t cost_max = 10;
  std::size_t jobs = 1;
  oracles::OracleBudget budget;
};

int cmd_gen_mvtsp(const GenMvtspArgs& args, Channels& io);
int cmd_gen_bdgpe(const GenBdgpeArgs& args, Channels& io);
int cmd_solve(const SolveArgs& args, Channels& io);
int cmd_verify(const VerifyArgs& args, Channels& io);
int cmd_oracle(const OracleArgs& args, Channels& io);
int cmd_bench(const BenchArgs& args, Channels& io);

/// Prints {"error": ...} and returns the exit code for a library error.
int report_error(const std::exception& e, Channels& io);
int report_usage(const std::string& message, Channels& io);

}  // namespace mvapx::cli
