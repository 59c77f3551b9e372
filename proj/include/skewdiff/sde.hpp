#pragma once

#include <cmath>
#include <cstdint>

#include "skewdiff/problem.hpp"
#include "skewdiff/rng.hpp"

namespace skewdiff {

struct SimConfig {
  double delta_t = 0.2 / 512;
  std::int64_t n_paths = 1'000'000;
  std::uint64_t seed = 42;
  double x0 = 0.0;
  int n_workers = 0;  // 0 picks hardware concurrency; SKEWDIFF_THREADS caps
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_paths = 0;
  std::uint64_t seed = 0;
  double delta_t = 0.0;
};

// Number of steps; delta_t must divide final_time to within round-off.
std::int64_t step_count(double final_time, double delta_t);

int resolve_worker_count(int requested);

// One Euler-Maruyama step of the transformed chain: x + theta(x) dW.
inline double euler_step(double x, double dw, const SkewParameters& sp) {
  return x + (x <= 0.0 ? sp.theta_minus : sp.theta_plus) * dw;
}

// Simulates X(0) = beta(x0) through step_count steps with N(0, delta_t)
// increments drawn from `normals`, then maps back through beta inverse.
template <class Gen>
double simulate_terminal(const SimConfig& cfg, double final_time,
                         const SkewParameters& sp, double lambda,
                         Gen&& normals) {
  const std::int64_t steps = step_count(final_time, cfg.delta_t);
  const double root_dt = std::sqrt(cfg.delta_t);
  double x = beta_forward(cfg.x0, lambda);
  for (std::int64_t k = 0; k < steps; ++k) {
    x = euler_step(x, root_dt * normals(), sp);
  }
  return beta_inverse(x, lambda);
}

// Sample mean and standard error of u0(Y(T)) over cfg.n_paths paths.  Path i
// draws from the stream keyed (seed, i); partial sums are accumulated in
// fixed-size chunks and reduced in index order, so the result is bitwise
// independent of the worker count.
McEstimate monte_carlo_estimate(const InterfaceProblem& p, const SimConfig& cfg);

}  // namespace skewdiff
