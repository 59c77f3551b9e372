#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "skewdiff/harness.hpp"
#include "skewdiff/ifem.hpp"
#include "skewdiff/oracle.hpp"
#include "skewdiff/problem.hpp"
#include "skewdiff/sde.hpp"

namespace py = pybind11;

namespace {

using namespace skewdiff;

InterfaceProblem make_problem(double d_plus, double d_minus, double lambda,
                              double final_time, double half_width,
                              const std::function<double(double)>& u0,
                              std::pair<double, double> support) {
  InterfaceProblem p;
  p.d_plus = d_plus;
  p.d_minus = d_minus;
  p.lambda = lambda;
  p.final_time = final_time;
  p.half_width = half_width > 0.0
                     ? half_width
                     : auto_half_width(d_plus, d_minus, final_time);
  if (u0) {
    p.u0.f = u0;
    p.u0.support_lo = support.first;
    p.u0.support_hi = support.second;
  }
  validate_problem(p);
  return p;
}

struct PdeSolution {
  DiscreteSolution sol;

  int level_index(int level) const {
    if (level < 0) level += sol.n_steps() + 1;
    if (level < 0 || level > sol.n_steps()) {
      throw std::out_of_range("level: out of range");
    }
    return level;
  }
};

PdeSolution solve_pde(const InterfaceProblem& p, double h, double theta,
                      double dt, bool damped_startup) {
  const double elements = 2.0 * p.half_width / h;
  const auto n = static_cast<std::int64_t>(std::llround(elements));
  if (n < 2 || std::abs(elements - static_cast<double>(n)) > 1e-9 * elements) {
    throw std::invalid_argument("h: must divide the domain width");
  }
  const Mesh1D mesh = build_mesh(p.half_width, static_cast<int>(n));
  if (dt <= 0.0) dt = h * h;
  PdeSolution wrapper;
  wrapper.sol = theta_scheme_solve(
      p, mesh, theta, dt,
      damped_startup ? StartupDamping::damped : StartupDamping::none);
  return wrapper;
}

McEstimate monte_carlo(const InterfaceProblem& p, double x0, double delta_t,
                       std::int64_t n_paths, std::uint64_t seed, int workers) {
  SimConfig cfg;
  cfg.x0 = x0;
  cfg.delta_t = delta_t > 0.0 ? delta_t : p.final_time / 512.0;
  cfg.n_paths = n_paths;
  cfg.seed = seed;
  cfg.n_workers = workers;
  return monte_carlo_estimate(p, cfg);
}

}  // namespace

PYBIND11_MODULE(_skewdiff, m) {
  m.doc() = "Diffusion across an interface: immersed finite elements, exact "
            "skew-diffusion densities and Euler-Maruyama Monte Carlo";

  py::class_<InterfaceProblem>(m, "InterfaceProblem")
      .def_readonly("d_plus", &InterfaceProblem::d_plus)
      .def_readonly("d_minus", &InterfaceProblem::d_minus)
      .def_readonly("lambda_", &InterfaceProblem::lambda)
      .def_readonly("final_time", &InterfaceProblem::final_time)
      .def_readonly("half_width", &InterfaceProblem::half_width)
      .def("u0", [](const InterfaceProblem& p, double x) { return p.u0(x); },
           py::arg("x"))
      .def("__repr__", [](const InterfaceProblem& p) {
        return "InterfaceProblem(d_plus=" + std::to_string(p.d_plus) +
               ", d_minus=" + std::to_string(p.d_minus) +
               ", lambda_=" + std::to_string(p.lambda) + ")";
      });

  py::class_<SymmetrizedCoefficients>(m, "SymmetrizedCoefficients")
      .def_readonly("c_plus", &SymmetrizedCoefficients::c_plus)
      .def_readonly("c_minus", &SymmetrizedCoefficients::c_minus)
      .def_readonly("kappa_plus", &SymmetrizedCoefficients::kappa_plus)
      .def_readonly("kappa_minus", &SymmetrizedCoefficients::kappa_minus)
      .def("rho", &SymmetrizedCoefficients::rho);

  py::class_<McEstimate>(m, "McEstimate")
      .def_readonly("mean", &McEstimate::mean)
      .def_readonly("std_error", &McEstimate::std_error)
      .def_readonly("n_paths", &McEstimate::n_paths)
      .def_readonly("seed", &McEstimate::seed)
      .def_readonly("delta_t", &McEstimate::delta_t)
      .def("__repr__", [](const McEstimate& e) {
        return "McEstimate(mean=" + std::to_string(e.mean) +
               ", std_error=" + std::to_string(e.std_error) + ")";
      });

  py::class_<PdeSolution>(m, "PdeSolution")
      .def_property_readonly(
          "nodes",
          [](const PdeSolution& s) { return s.sol.system.mesh.nodes; })
      .def_property_readonly("dt", [](const PdeSolution& s) { return s.sol.dt; })
      .def_property_readonly(
          "n_steps", [](const PdeSolution& s) { return s.sol.n_steps(); })
      .def_property_readonly(
          "warnings", [](const PdeSolution& s) { return s.sol.warnings; })
      .def(
          "values",
          [](const PdeSolution& s, int level) {
            return s.sol.coeffs[s.level_index(level)];
          },
          py::arg("level") = -1)
      .def(
          "evaluate",
          [](const PdeSolution& s, double x, int level) {
            return evaluate_uh(s.sol, s.level_index(level), x);
          },
          py::arg("x"), py::arg("level") = -1);

  m.def("make_problem", &make_problem, py::arg("d_plus"), py::arg("d_minus"),
        py::arg("lambda_"), py::arg("final_time") = 0.2,
        py::arg("half_width") = 0.0, py::arg("u0") = nullptr,
        py::arg("support") = std::make_pair(-1.0, 1.0),
        "Build a validated interface problem; u0 defaults to (1-x^2)^5 on "
        "|x|<1 and half_width 0 picks the automatic domain");
  m.def("lambda_star", &lambda_star, py::arg("d_plus"), py::arg("d_minus"));
  m.def("alpha_of_lambda", &alpha_of_lambda, py::arg("problem"));
  m.def("symmetrize", &symmetrize, py::arg("problem"));
  m.def("beta_forward", &beta_forward, py::arg("x"), py::arg("lambda_"));
  m.def("beta_inverse", &beta_inverse, py::arg("y"), py::arg("lambda_"));
  m.def("skew_density_p", &skew_density_p, py::arg("t"), py::arg("x"),
        py::arg("y"), py::arg("alpha"));
  m.def(
      "skew_density_q",
      [](const InterfaceProblem& p, double t, double x, double y) {
        const SkewParameters sp = skew_parameters(p);
        return skew_diffusion_density_q(t, x, y, sp);
      },
      py::arg("problem"), py::arg("t"), py::arg("x"), py::arg("y"));
  m.def(
      "exact_solution",
      [](const InterfaceProblem& p, double t, double x, double abs_tol) {
        QuadratureOptions quad;
        quad.abs_tol = abs_tol;
        return exact_solution_u(p, t, x, quad);
      },
      py::arg("problem"), py::arg("t"), py::arg("x"),
      py::arg("abs_tol") = 1e-10, py::call_guard<py::gil_scoped_release>());
  m.def("solve_pde", &solve_pde, py::arg("problem"), py::arg("h"),
        py::arg("theta") = 0.5, py::arg("dt") = 0.0,
        py::arg("damped_startup") = false,
        py::call_guard<py::gil_scoped_release>());
  m.def("monte_carlo", &monte_carlo, py::arg("problem"), py::arg("x0") = 0.0,
        py::arg("delta_t") = 0.0, py::arg("n_paths") = 100000,
        py::arg("seed") = 42, py::arg("workers") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "fit_rate",
      [](const std::vector<std::pair<double, double>>& pairs) {
        const FitResult fit = fit_rate(pairs);
        py::dict out;
        out["slope"] = fit.slope;
        out["intercept"] = fit.intercept;
        out["n_used"] = fit.n_used;
        out["warnings"] = fit.warnings;
        return out;
      },
      py::arg("pairs"));
}
