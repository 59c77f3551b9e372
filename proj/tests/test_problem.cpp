#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "skewdiff/problem.hpp"

using namespace skewdiff;

namespace {

InterfaceProblem make(double dp, double dm, double lambda) {
  InterfaceProblem p;
  p.d_plus = dp;
  p.d_minus = dm;
  p.lambda = lambda;
  return p;
}

}  // namespace

TEST_CASE("default problem validates") {
  InterfaceProblem p;
  CHECK_NOTHROW(validate_problem(p));
  CHECK(p.d_plus == 1.0);
  CHECK(p.lambda == 0.5);
  CHECK(p.final_time == 0.2);
  CHECK(p.half_width == 10.0);
}

TEST_CASE("validation rejects bad fields by name") {
  auto expect_field = [](InterfaceProblem p, const char* field) {
    try {
      validate_problem(p);
      FAIL_CHECK("expected invalid_argument for " << field);
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  };

  InterfaceProblem p;
  p.d_plus = 0.0;
  expect_field(p, "d_plus");
  p = InterfaceProblem{};
  p.d_minus = -3.0;
  expect_field(p, "d_minus");
  p = InterfaceProblem{};
  p.d_plus = std::numeric_limits<double>::infinity();
  expect_field(p, "d_plus");
  p = InterfaceProblem{};
  p.lambda = 0.0;
  expect_field(p, "lambda");
  p = InterfaceProblem{};
  p.lambda = 1.0;
  expect_field(p, "lambda");
  p = InterfaceProblem{};
  p.final_time = 0.0;
  expect_field(p, "final_time");
  p = InterfaceProblem{};
  p.half_width = -1.0;
  expect_field(p, "half_width");
  p = InterfaceProblem{};
  p.u0.f = nullptr;
  expect_field(p, "u0");
  p = InterfaceProblem{};
  p.u0.support_lo = 1.0;
  p.u0.support_hi = -1.0;
  expect_field(p, "u0");
}

TEST_CASE("symmetrized coefficients: worked example D+=10 D-=1 lambda=2/3") {
  auto s = symmetrize(make(10.0, 1.0, 2.0 / 3.0));
  CHECK(s.c_plus == doctest::Approx(1.0 / 15.0).epsilon(1e-15));
  CHECK(s.c_minus == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(s.kappa_plus == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(s.kappa_minus == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(s.rho() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("symmetrized coefficients: dyadic parameters are exact") {
  auto s = symmetrize(make(4.0, 1.0, 0.5));
  CHECK(s.c_plus == 0.125);
  CHECK(s.c_minus == 0.5);
  CHECK(s.kappa_plus == 0.25);
  CHECK(s.kappa_minus == 0.25);
  CHECK(s.rho() == 1.0);
}

TEST_CASE("symmetrization invariants on a parameter sweep") {
  const double dps[] = {1.0, 4.0, 10.0, 100.0};
  const double lambdas[] = {0.1, 0.3, 0.5, 0.77, 0.95};
  for (double dp : dps) {
    for (double lam : lambdas) {
      auto s = symmetrize(make(dp, 1.7, lam));
      CHECK(s.kappa_plus + s.kappa_minus == doctest::Approx(0.5).epsilon(1e-15));
      CHECK(s.kappa_plus / s.c_plus == doctest::Approx(dp / 2.0).epsilon(1e-14));
      CHECK(s.kappa_minus / s.c_minus == doctest::Approx(1.7 / 2.0).epsilon(1e-14));
      CHECK(s.rho() >= 1.0);
    }
  }
}

TEST_CASE("lambda_star") {
  CHECK(lambda_star(10.0, 1.0) == 10.0 / 11.0);
  CHECK(lambda_star(100.0, 1.0) == 100.0 / 101.0);
  CHECK(lambda_star(1.0, 1.0) == 0.5);
  // lambda_star removes the kappa imbalance entirely.
  auto s = symmetrize(make(10.0, 1.0, lambda_star(10.0, 1.0)));
  CHECK(s.c_plus == doctest::Approx(s.c_minus).epsilon(1e-15));
}

TEST_CASE("alpha_of_lambda: frozen values") {
  CHECK(alpha_of_lambda(make(10.0, 1.0, 0.5)) ==
        doctest::Approx(0.2402530733520423).epsilon(1e-13));
  CHECK(alpha_of_lambda(make(10.0, 1.0, 10.0 / 11.0)) ==
        doctest::Approx(0.759746926647958).epsilon(1e-13));
  CHECK(alpha_of_lambda(make(100.0, 1.0, 0.5)) ==
        doctest::Approx(1.0 / 11.0).epsilon(1e-14));
  CHECK(alpha_of_lambda(make(100.0, 1.0, 100.0 / 101.0)) ==
        doctest::Approx(10.0 / 11.0).epsilon(1e-14));
}

TEST_CASE("alpha mirror identity alpha(D+,D-,l) + alpha(D-,D+,1-l) == 1") {
  const double pairs[][2] = {{10.0, 1.0}, {100.0, 1.0}, {4.0, 9.0}};
  const double lambdas[] = {0.1, 0.3, 0.5, 0.77};
  for (auto& d : pairs) {
    for (double lam : lambdas) {
      double a = alpha_of_lambda(make(d[0], d[1], lam));
      double b = alpha_of_lambda(make(d[1], d[0], 1.0 - lam));
      CHECK(a + b == doctest::Approx(1.0).epsilon(4e-16));
      CHECK(a > 0.0);
      CHECK(a < 1.0);
    }
  }
}

TEST_CASE("skew parameters") {
  auto sp = skew_parameters(make(10.0, 1.0, 0.5));
  CHECK(sp.sigma_plus == doctest::Approx(std::sqrt(10.0)).epsilon(1e-16));
  CHECK(sp.sigma_minus == 1.0);
  CHECK(sp.theta_plus == doctest::Approx(1.5811388300841898).epsilon(1e-15));
  CHECK(sp.theta_minus == 0.5);
  CHECK(sp.alpha == doctest::Approx(0.2402530733520423).epsilon(1e-13));
}

TEST_CASE("beta transform: frozen examples at lambda=0.3") {
  CHECK(beta_forward(-2.0, 0.3) == doctest::Approx(-0.6).epsilon(1e-16));
  CHECK(beta_forward(2.0, 0.3) == doctest::Approx(1.4).epsilon(1e-16));
  CHECK(beta_forward(0.0, 0.3) == 0.0);
  CHECK(beta_inverse(-0.6, 0.3) == doctest::Approx(-2.0).epsilon(1e-16));
  CHECK(beta_inverse(1.4, 0.3) == doctest::Approx(2.0).epsilon(1e-16));
}

TEST_CASE("beta transform: round trip and monotonicity") {
  const double lambdas[] = {0.1, 0.3, 0.5, 0.9090909090909091};
  const double xs[] = {-7.0, -1.0, -1e-12, 0.0, 1e-12, 0.25, 3.0};
  for (double lam : lambdas) {
    double prev = -std::numeric_limits<double>::infinity();
    for (double x : xs) {
      double y = beta_forward(x, lam);
      CHECK(beta_inverse(y, lam) ==
            doctest::Approx(x).epsilon(4e-16).scale(std::max(1.0, std::abs(x))));
      CHECK(y > prev);
      prev = y;
      CHECK((y > 0) == (x > 0));
      CHECK((y < 0) == (x < 0));
    }
  }
}

TEST_CASE("theta coefficient is left-closed at the interface") {
  auto sp = skew_parameters(make(10.0, 1.0, 0.5));
  CHECK(theta_coefficient(0.0, sp) == sp.theta_minus);
  CHECK(theta_coefficient(-1e-300, sp) == sp.theta_minus);
  CHECK(theta_coefficient(1e-300, sp) == sp.theta_plus);
  CHECK(theta_coefficient(-5.0, sp) == sp.theta_minus);
  CHECK(theta_coefficient(2.0, sp) == sp.theta_plus);
}

TEST_CASE("diffusion_at is left-closed at the interface") {
  auto p = make(10.0, 1.0, 0.5);
  CHECK(diffusion_at(0.0, p) == 1.0);
  CHECK(diffusion_at(1e-300, p) == 10.0);
  CHECK(diffusion_at(-3.0, p) == 1.0);
}

TEST_CASE("default initial profile") {
  auto u0 = default_initial_profile();
  CHECK(u0.support_lo == -1.0);
  CHECK(u0.support_hi == 1.0);
  CHECK(u0(0.0) == 1.0);
  CHECK(u0(1.0) == 0.0);
  CHECK(u0(-1.0) == 0.0);
  CHECK(u0(2.0) == 0.0);
  CHECK(u0(-1.5) == 0.0);
  // (1 - 0.25)^5 evaluates exactly in binary arithmetic.
  CHECK(u0(0.5) == 0.2373046875);
  CHECK(u0(-0.5) == 0.2373046875);
  // Smoothness near the support edge: the quintic vanishes fast.
  CHECK(u0(0.999) < 1e-13);
}

TEST_CASE("constant profile") {
  auto c = constant_profile(3.5);
  CHECK(c(0.0) == 3.5);
  CHECK(c(-123.0) == 3.5);
  CHECK(c(4.5e7) == 3.5);
  CHECK(c.support_lo < -1e200);
  CHECK(c.support_hi > 1e200);
}
