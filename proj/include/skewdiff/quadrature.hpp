#pragma once

#include <functional>
#include <vector>

namespace skewdiff {

// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2n - 1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

double integrate_gauss(const std::function<double(double)>& f, double a,
                       double b, const GaussRule& rule);

struct QuadratureOptions {
  double abs_tol = 1e-10;
  int max_depth = 15;
};

// Adaptive Gauss-Kronrod on [a, b]; infinite endpoints are allowed.
// Integrands must be finite on the open interval.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, const QuadratureOptions& opts = {});

}  // namespace skewdiff
