#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "skewdiff/ifem.hpp"
#include "skewdiff/problem.hpp"

namespace skewdiff {

enum class Method { ifem_be, ifem_cn, sde_em };

std::string method_name(Method m);

struct Scenario {
  std::string id;
  Method method = Method::ifem_be;
  double d_plus = 10.0;
  double d_minus = 1.0;
  double lambda = 0.5;
  double final_time = 0.2;
  double half_width = 0.0;  // 0 picks auto_half_width
  // h values for the FE methods, dt values for the SDE; strictly decreasing,
  // at least three entries.
  std::vector<double> resolutions;
  double window_lo = -5.0;  // PDE error window
  double window_hi = 5.0;
  double eval_point = 0.0;  // SDE evaluation point
  std::int64_t n_paths = 1'000'000;
  std::uint64_t seed = 42;
  int n_workers = 0;
};

// Conditioning constants of the symmetrized problem; alpha4 is evaluated at
// the coarsest ladder entry's step count.
struct DiagnosticConstants {
  double rho = 1.0;
  double alpha1 = 1.0;
  double alpha3 = 1.0;
  double alpha4 = 1.0;
  double alpha5 = 1.0;
};

struct ReportRow {
  double resolution = 0.0;
  double error = 0.0;
  double std_error = 0.0;  // MC rows only, 0 otherwise
  double slope_so_far = 0.0;  // NaN on the first row
  double wall_ms = 0.0;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  int n_used = 0;
  std::vector<std::string> warnings;
};

struct ConvergenceReport {
  Scenario scenario;
  std::vector<ReportRow> rows;
  FitResult fit;
  DiagnosticConstants diagnostics;
};

// Space two-norm sqrt(h sum e_i^2) over mesh nodes inside the window; by
// default only the final time level is sampled, otherwise the max over all
// stored levels.
double error_l2_linf(const DiscreteSolution& sol,
                     const std::function<double(double, double)>& oracle,
                     double window_lo = -5.0, double window_hi = 5.0,
                     bool all_time_levels = false);

// Least-squares slope of log(error) against log(resolution); nonpositive
// errors are excluded with a warning, fewer than two usable pairs yield a
// NaN slope.
FitResult fit_rate(const std::vector<std::pair<double, double>>& pairs);

// 10 unless the diffusion length sqrt(max(D) T) calls for a wider box.
double auto_half_width(double d_plus, double d_minus, double final_time);

DiagnosticConstants compute_diagnostics(const InterfaceProblem& p,
                                        std::int64_t coarsest_steps);

ConvergenceReport run_study(const Scenario& s);

// One row per (scenario, resolution); column order fixed.  Timings are
// zeroed when include_timing is false so artifacts can be compared
// byte-for-byte.
void write_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports,
               bool include_timing = true);

std::string summary_json(const std::vector<ConvergenceReport>& reports,
                         bool include_timing = true);

}  // namespace skewdiff
