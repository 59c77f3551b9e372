#include "skewdiff/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace skewdiff {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143268;

inline double gauss_kernel(double t, double z) {
  return kInvSqrt2Pi / std::sqrt(t) * std::exp(-z * z / (2.0 * t));
}

// Splits [lo, hi] at the interior points of `cuts` and integrates piecewise;
// the integrand is smooth on each piece.
double integrate_split(const std::function<double(double)>& f, double lo,
                       double hi, std::vector<double> cuts,
                       const QuadratureOptions& opts) {
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::erase_if(cuts, [&](double c) { return !(c >= lo && c <= hi); });
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] > 1e-14 * (1.0 + std::abs(cuts[i]))) {
      total += integrate_adaptive(f, cuts[i], cuts[i + 1], opts);
    }
  }
  return total;
}

}  // namespace

double skew_density_p(double t, double x, double y, double alpha) {
  if (!(t > 0.0)) throw std::domain_error("t: must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("alpha: must lie in (0, 1)");
  }
  const double direct = gauss_kernel(t, y - x);
  if (y > 0.0) {
    if (x > 0.0) return direct + (2.0 * alpha - 1.0) * gauss_kernel(t, y + x);
    return 2.0 * alpha * direct;
  }
  if (x > 0.0) return 2.0 * (1.0 - alpha) * direct;
  return direct - (2.0 * alpha - 1.0) * gauss_kernel(t, y + x);
}

double skew_diffusion_density_q(double t, double x, double y,
                                const SkewParameters& sp) {
  const double sx = x <= 0.0 ? sp.sigma_minus : sp.sigma_plus;
  const double sy = y <= 0.0 ? sp.sigma_minus : sp.sigma_plus;
  return skew_density_p(t, x / sx, y / sy, sp.alpha) / sy;
}

double SkewDensity::p(double t, double x, double y) const {
  return skew_density_p(t, x, y, alpha);
}

double SkewDensity::q(double t, double x, double y) const {
  return skew_diffusion_density_q(t, x, y, params);
}

double SkewDensity::normalization(double t, double x) const {
  if (!(t > 0.0)) throw std::domain_error("t: must be positive");
  const double spread =
      10.0 * std::sqrt(t) * std::max(params.sigma_plus, params.sigma_minus);
  const double s0 = std::min(x, 0.0) - spread;
  const double s1 = std::max(x, 0.0) + spread;
  const auto f = [&](double y) { return q(t, x, y); };
  const double inf = std::numeric_limits<double>::infinity();
  return integrate_adaptive(f, -inf, s0, quad) +
         integrate_adaptive(f, s0, 0.0, quad) +
         integrate_adaptive(f, 0.0, s1, quad) +
         integrate_adaptive(f, s1, inf, quad);
}

SkewDensity make_skew_density(const InterfaceProblem& p,
                              const QuadratureOptions& quad) {
  validate_problem(p);
  SkewDensity d;
  d.params = skew_parameters(p);
  d.alpha = d.params.alpha;
  d.quad = quad;
  return d;
}

double exact_solution_u(const InterfaceProblem& p, double t, double x,
                        const QuadratureOptions& quad) {
  validate_problem(p);
  if (!(t >= 0.0)) throw std::domain_error("t: must be nonnegative");
  if (t == 0.0) return p.u0(x);
  const double lo = p.u0.support_lo;
  const double hi = p.u0.support_hi;
  if (!(std::abs(lo) < 1e8 && std::abs(hi) < 1e8)) {
    throw std::invalid_argument("u0: support too wide for quadrature");
  }
  const SkewParameters sp = skew_parameters(p);
  const double alpha = sp.alpha;
  const double spread = 10.0 * std::sqrt(t * std::max(p.d_plus, p.d_minus));
  const auto f = [&](double y) {
    return p.u0(y) * skew_diffusion_density_q(t, x, y, sp);
  };
  return integrate_split(
      f, lo, hi, {0.0, x, x - spread, x + spread, -spread, spread}, quad);
}

}  // namespace skewdiff
