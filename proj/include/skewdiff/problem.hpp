#pragma once

#include <functional>

namespace skewdiff {

// Initial datum with declared compact support; evaluations outside
// [support_lo, support_hi] must return 0.
struct InitialProfile {
  std::function<double(double)> f;
  double support_lo = -1.0;
  double support_hi = 1.0;

  double operator()(double x) const { return f(x); }
};

// (1 - x^2)^5 on |x| < 1, zero elsewhere.
InitialProfile default_initial_profile();

// Constant value everywhere (support spans the whole line); used by
// Monte Carlo diagnostics.
InitialProfile constant_profile(double value);

// Diffusion with coefficient D^+ for x > 0, D^- for x < 0, and flux split
// lambda u_x(0+) = (1 - lambda) u_x(0-) at the interface.  The PDE solver
// works on [-half_width, half_width] with homogeneous Dirichlet ends.
struct InterfaceProblem {
  double d_plus = 1.0;
  double d_minus = 1.0;
  double lambda = 0.5;
  double final_time = 0.2;
  double half_width = 10.0;
  InitialProfile u0 = default_initial_profile();
};

// Throws std::invalid_argument naming the offending field.
void validate_problem(const InterfaceProblem& p);

// Coefficients of the symmetrized weak form: c = 2 kappa / D with
// c^+ = lambda / D^+, c^- = (1 - lambda) / D^-.
struct SymmetrizedCoefficients {
  double c_plus = 0.0;
  double c_minus = 0.0;
  double kappa_plus = 0.0;
  double kappa_minus = 0.0;

  double rho() const;  // max(kappa-/kappa+, kappa+/kappa-)
};

SymmetrizedCoefficients symmetrize(const InterfaceProblem& p);

// Flux-continuity value of lambda: D^+ / (D^+ + D^-).
double lambda_star(double d_plus, double d_minus);

// Parameters of the skew process Y = sigma(B^alpha) and of its
// beta-transformed image X = beta(Y).
struct SkewParameters {
  double alpha = 0.5;
  double sigma_plus = 1.0;
  double sigma_minus = 1.0;
  double theta_plus = 0.5;   // (1 - lambda) sqrt(D^+)
  double theta_minus = 0.5;  // lambda sqrt(D^-)
};

double alpha_of_lambda(const InterfaceProblem& p);
SkewParameters skew_parameters(const InterfaceProblem& p);

// Piecewise-linear transform removing the local-time drift:
// beta(x) = lambda x for x <= 0, (1 - lambda) x for x > 0.
double beta_forward(double x, double lambda);
double beta_inverse(double y, double lambda);

// Volatility of the transformed process; the x = 0 branch is the minus one,
// matching beta's left derivative.
double theta_coefficient(double x, const SkewParameters& sp);

// D(x) with the same left-closed convention at 0.
double diffusion_at(double x, const InterfaceProblem& p);

}  // namespace skewdiff
