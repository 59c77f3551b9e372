#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace skewdiff::cli {

enum class Command { solve_pde, simulate_sde, exact, converge };

// Exit codes: 0 success, 1 numeric failure, 2 I/O failure, 64 usage.
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::exact;
  double d_plus = 10.0;
  double d_minus = 1.0;
  double lambda = 0.5;        // resolved value
  std::string lambda_token;   // raw flag text
  double final_time = 0.2;
  double half_width = 0.0;    // 0 picks the automatic domain
  double theta = 0.5;
  std::string startup;        // "none" or "damped" (solve-pde)
  std::vector<double> h_list;
  std::vector<double> dt_list;
  std::int64_t n_paths = 1'000'000;
  std::uint64_t seed = 42;
  std::vector<double> points;
  double x = 0.0;
  double t = -1.0;            // -1 means "at final_time"
  std::string method;         // converge without a preset
  std::string preset;
  std::string out_path;
  bool no_timing = false;
  int workers = 0;
};

// Parses argv-style tokens (without the program name).  Flag values override
// config-file values.  Throws UsageError on unknown keys, unresolvable
// lambda tokens, or out-of-range fields.
RunConfig parse_config(const std::vector<std::string>& args);

// Runs the configured command, writing artifacts and a one-line summary.
// Throws IoError when the output path cannot be written; numeric failures
// propagate as other exceptions.
void dispatch(const RunConfig& cfg, std::ostream& out);

// Full front end: parse, dispatch, map errors to exit codes.
int run_main(int argc, char** argv);

}  // namespace skewdiff::cli
