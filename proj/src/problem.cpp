#include "skewdiff/problem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace skewdiff {

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw std::invalid_argument(field + ": " + what);
}

}  // namespace

InitialProfile default_initial_profile() {
  InitialProfile p;
  p.f = [](double x) {
    if (x <= -1.0 || x >= 1.0) return 0.0;
    const double w = 1.0 - x * x;
    const double w2 = w * w;
    return w2 * w2 * w;
  };
  p.support_lo = -1.0;
  p.support_hi = 1.0;
  return p;
}

InitialProfile constant_profile(double value) {
  InitialProfile p;
  p.f = [value](double) { return value; };
  p.support_lo = -1e300;
  p.support_hi = 1e300;
  return p;
}

void validate_problem(const InterfaceProblem& p) {
  require(std::isfinite(p.d_plus) && p.d_plus > 0.0, "d_plus", "must be positive");
  require(std::isfinite(p.d_minus) && p.d_minus > 0.0, "d_minus", "must be positive");
  require(std::isfinite(p.lambda) && p.lambda > 0.0 && p.lambda < 1.0, "lambda",
          "must lie in (0, 1)");
  require(std::isfinite(p.final_time) && p.final_time > 0.0, "final_time",
          "must be positive");
  require(std::isfinite(p.half_width) && p.half_width > 0.0, "half_width",
          "must be positive");
  require(static_cast<bool>(p.u0.f), "u0", "profile not set");
  require(p.u0.support_lo < p.u0.support_hi, "u0",
          "support interval is empty");
}

double SymmetrizedCoefficients::rho() const {
  const double r = kappa_minus / kappa_plus;
  return r >= 1.0 ? r : 1.0 / r;
}

SymmetrizedCoefficients symmetrize(const InterfaceProblem& p) {
  SymmetrizedCoefficients s;
  s.c_plus = p.lambda / p.d_plus;
  s.c_minus = (1.0 - p.lambda) / p.d_minus;
  s.kappa_plus = p.lambda / 2.0;
  s.kappa_minus = (1.0 - p.lambda) / 2.0;
  return s;
}

double lambda_star(double d_plus, double d_minus) {
  return d_plus / (d_plus + d_minus);
}

double alpha_of_lambda(const InterfaceProblem& p) {
  const double wm = p.lambda * std::sqrt(p.d_minus);
  const double wp = (1.0 - p.lambda) * std::sqrt(p.d_plus);
  return wm / (wm + wp);
}

SkewParameters skew_parameters(const InterfaceProblem& p) {
  SkewParameters sp;
  sp.sigma_plus = std::sqrt(p.d_plus);
  sp.sigma_minus = std::sqrt(p.d_minus);
  sp.theta_plus = (1.0 - p.lambda) * sp.sigma_plus;
  sp.theta_minus = p.lambda * sp.sigma_minus;
  sp.alpha = sp.theta_minus / (sp.theta_minus + sp.theta_plus);
  return sp;
}

double beta_forward(double x, double lambda) {
  return x <= 0.0 ? lambda * x : (1.0 - lambda) * x;
}

double beta_inverse(double y, double lambda) {
  return y <= 0.0 ? y / lambda : y / (1.0 - lambda);
}

double theta_coefficient(double x, const SkewParameters& sp) {
  return x <= 0.0 ? sp.theta_minus : sp.theta_plus;
}

double diffusion_at(double x, const InterfaceProblem& p) {
  return x <= 0.0 ? p.d_minus : p.d_plus;
}

}  // namespace skewdiff
