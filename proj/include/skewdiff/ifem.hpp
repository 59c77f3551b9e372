#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewdiff/problem.hpp"
#include "skewdiff/tridiagonal.hpp"

namespace skewdiff {

// Uniform mesh on [-half_width, half_width].  The interface x = 0 either
// falls strictly inside one element (odd n_elements) or exactly on a node
// (even n_elements); both cases are tracked.
struct Mesh1D {
  double half_width = 0.0;
  int n_elements = 0;
  double h = 0.0;
  std::vector<double> nodes;
  int interface_element = -1;  // -1 when the interface sits on a node
  int interface_node = -1;     // -1 when the interface is interior to an element

  bool interface_on_node() const { return interface_node >= 0; }
};

Mesh1D build_mesh(double half_width, int n_elements);

// The two piecewise-linear basis functions of the interface element, kinked
// at 0 so that [phi] = 0 and kappa^- s^- = kappa^+ s^+ hold exactly.
struct IfeBasisLocal {
  struct Piece {
    double slope_minus = 0.0;
    double slope_plus = 0.0;
    double value_at_interface = 0.0;
  };

  double x_left = 0.0;
  double x_right = 0.0;
  Piece left_node;   // 1 at x_left, 0 at x_right
  Piece right_node;  // 0 at x_left, 1 at x_right

  double eval_left(double x) const;
  double eval_right(double x) const;
};

IfeBasisLocal make_interface_basis(double x_left, double x_right,
                                   double kappa_minus, double kappa_plus);

// Requires the interface strictly inside an element; the node-aligned case
// needs no modified basis and is rejected (std::logic_error).
IfeBasisLocal interface_basis(const Mesh1D& mesh, double kappa_minus,
                              double kappa_plus);

// Matrices are over interior nodes (homogeneous Dirichlet ends eliminated).
std::pair<TridiagonalSystem, TridiagonalSystem> assemble(
    const Mesh1D& mesh, const std::optional<IfeBasisLocal>& basis,
    const SymmetrizedCoefficients& coeffs);

TridiagonalSystem assemble_unweighted_mass(
    const Mesh1D& mesh, const std::optional<IfeBasisLocal>& basis);

// L2 projection of u0 onto the IFE space under the unweighted inner product.
// Returns nodal coefficients over all nodes with the boundary entries
// forced to 0.
std::vector<double> l2_project_initial(const Mesh1D& mesh,
                                       const std::optional<IfeBasisLocal>& basis,
                                       const TridiagonalSystem& unweighted_mass,
                                       const InitialProfile& u0);

struct IfeSystem {
  Mesh1D mesh;
  SymmetrizedCoefficients coeffs;
  std::optional<IfeBasisLocal> basis;  // engaged only for interior interfaces
  TridiagonalSystem mass;
  TridiagonalSystem stiffness;
};

IfeSystem build_ife_system(const InterfaceProblem& p, int n_elements);

// Optional replacement of the first step by two implicit half steps, which
// damps the start-up transient of the trapezoidal rule.
enum class StartupDamping { none, damped };

struct DiscreteSolution {
  IfeSystem system;
  double theta = 0.5;
  double dt = 0.0;  // effective step, final_time / n_steps
  // coeffs[k] holds all nodal values at time level k, boundary entries 0.
  std::vector<std::vector<double>> coeffs;
  std::vector<std::string> warnings;

  int n_steps() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Steps (M + theta dt K) u^k = (M - (1 - theta) dt K) u^{k-1} from the L2
// projection of u0.  dt is adjusted downward to divide final_time exactly.
DiscreteSolution theta_scheme_solve(const InterfaceProblem& p,
                                    const Mesh1D& mesh, double theta, double dt,
                                    StartupDamping startup = StartupDamping::none);

double evaluate_uh(const DiscreteSolution& sol, int t_index, double x);

// Gershgorin estimate of 2 / lambda_max(M^{-1} K); steps larger than this
// with theta < 1/2 trigger a stability warning.
double explicit_stability_limit(const IfeSystem& system);

}  // namespace skewdiff
