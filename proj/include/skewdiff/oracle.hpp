#pragma once

#include "skewdiff/problem.hpp"
#include "skewdiff/quadrature.hpp"

namespace skewdiff {

// Transition density of skew Brownian motion with parameter alpha.  The
// density is discontinuous across y = 0; y <= 0 selects the minus branch.
double skew_density_p(double t, double x, double y, double alpha);

// Transition density of Y = sigma(B^alpha), obtained from p by the
// left-closed sqrt(D) scaling in both arguments.
double skew_diffusion_density_q(double t, double x, double y,
                                const SkewParameters& sp);

struct SkewDensity {
  double alpha = 0.5;
  SkewParameters params;
  QuadratureOptions quad;

  double p(double t, double x, double y) const;
  double q(double t, double x, double y) const;
  double normalization(double t, double x) const;  // integral of q over R
};

SkewDensity make_skew_density(const InterfaceProblem& p,
                              const QuadratureOptions& quad = {});

// u(t, x) = integral of u0(y) q(t, x, y) dy over the support of u0, split at
// the interface, the support ends, and the kernel bumps.  t = 0 returns
// u0(x) directly; t < 0 is rejected.
double exact_solution_u(const InterfaceProblem& p, double t, double x,
                        const QuadratureOptions& quad = {});

}  // namespace skewdiff
