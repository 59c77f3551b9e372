#include "skewdiff/ifem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "skewdiff/quadrature.hpp"

namespace skewdiff {

namespace {

constexpr double kDivisionSlack = 1e-9;

// Exact integral of the product of two piecewise-linear functions that are
// both linear on [p, q] (Simpson is exact for quadratics).
template <class F, class G>
double product_integral(double p, double q, F&& f, G&& g) {
  const double mid = 0.5 * (p + q);
  return (q - p) / 6.0 * (f(p) * g(p) + 4.0 * f(mid) * g(mid) + f(q) * g(q));
}

struct LocalMatrices {
  double mass[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
  double stiff[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
};

LocalMatrices standard_local(double len, double c, double kappa) {
  LocalMatrices lm;
  const double mc = c * len / 6.0;
  lm.mass[0][0] = lm.mass[1][1] = 2.0 * mc;
  lm.mass[0][1] = lm.mass[1][0] = mc;
  const double kc = kappa / len;
  lm.stiff[0][0] = lm.stiff[1][1] = kc;
  lm.stiff[0][1] = lm.stiff[1][0] = -kc;
  return lm;
}

LocalMatrices interface_local(const IfeBasisLocal& b, double c_minus,
                              double c_plus, double kappa_minus,
                              double kappa_plus) {
  LocalMatrices lm;
  const double a = -b.x_left;
  const double w = b.x_right;
  const IfeBasisLocal::Piece pieces[2] = {b.left_node, b.right_node};
  const auto eval = [&b](int i, double x) {
    return i == 0 ? b.eval_left(x) : b.eval_right(x);
  };
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      const auto fi = [&](double x) { return eval(i, x); };
      const auto fj = [&](double x) { return eval(j, x); };
      const double m = c_minus * product_integral(b.x_left, 0.0, fi, fj) +
                       c_plus * product_integral(0.0, b.x_right, fi, fj);
      const double k =
          kappa_minus * a * pieces[i].slope_minus * pieces[j].slope_minus +
          kappa_plus * w * pieces[i].slope_plus * pieces[j].slope_plus;
      lm.mass[i][j] = lm.mass[j][i] = m;
      lm.stiff[i][j] = lm.stiff[j][i] = k;
    }
  }
  return lm;
}

void scatter(const LocalMatrices& lm, int element, TridiagonalSystem& mass,
             TridiagonalSystem& stiff, int n_interior) {
  const int gi = element - 1;      // interior index of the left node
  const int gj = element;          // interior index of the right node
  if (gi >= 0 && gi < n_interior) {
    mass.diag[gi] += lm.mass[0][0];
    stiff.diag[gi] += lm.stiff[0][0];
  }
  if (gj >= 0 && gj < n_interior) {
    mass.diag[gj] += lm.mass[1][1];
    stiff.diag[gj] += lm.stiff[1][1];
  }
  if (gi >= 0 && gj < n_interior) {
    mass.off[gi] += lm.mass[0][1];
    stiff.off[gi] += lm.stiff[0][1];
  }
}

std::pair<TridiagonalSystem, TridiagonalSystem> assemble_weighted(
    const Mesh1D& mesh, const std::optional<IfeBasisLocal>& basis,
    double c_minus, double c_plus, double kappa_minus, double kappa_plus) {
  if (mesh.interface_element >= 0 && !basis) {
    throw std::invalid_argument(
        "assemble: interface element present but no basis supplied");
  }
  const int n_interior = mesh.n_elements - 1;
  TridiagonalSystem mass, stiff;
  mass.diag.assign(n_interior, 0.0);
  mass.off.assign(n_interior > 0 ? n_interior - 1 : 0, 0.0);
  stiff.diag = mass.diag;
  stiff.off = mass.off;
  for (int e = 0; e < mesh.n_elements; ++e) {
    const double xl = mesh.nodes[e];
    const double xr = mesh.nodes[e + 1];
    LocalMatrices lm;
    if (e == mesh.interface_element) {
      lm = interface_local(*basis, c_minus, c_plus, kappa_minus, kappa_plus);
    } else {
      const bool plus_side = xl + xr > 0.0;
      lm = standard_local(xr - xl, plus_side ? c_plus : c_minus,
                          plus_side ? kappa_plus : kappa_minus);
    }
    scatter(lm, e, mass, stiff, n_interior);
  }
  return {std::move(mass), std::move(stiff)};
}

}  // namespace

Mesh1D build_mesh(double half_width, int n_elements) {
  if (!(half_width > 0.0)) {
    throw std::invalid_argument("half_width: must be positive");
  }
  if (n_elements < 2) {
    throw std::invalid_argument("n_elements: must be at least 2");
  }
  Mesh1D m;
  m.half_width = half_width;
  m.n_elements = n_elements;
  m.h = 2.0 * half_width / n_elements;
  m.nodes.resize(n_elements + 1);
  for (int i = 0; i <= n_elements; ++i) {
    m.nodes[i] = (2.0 * i - n_elements) * half_width / n_elements;
  }
  if (n_elements % 2 == 0) {
    m.interface_node = n_elements / 2;
    m.nodes[m.interface_node] = 0.0;
  } else {
    m.interface_element = (n_elements - 1) / 2;
  }
  return m;
}

double IfeBasisLocal::eval_left(double x) const {
  return x <= 0.0 ? 1.0 + left_node.slope_minus * (x - x_left)
                  : left_node.value_at_interface + left_node.slope_plus * x;
}

double IfeBasisLocal::eval_right(double x) const {
  return x <= 0.0 ? right_node.slope_minus * (x - x_left)
                  : right_node.value_at_interface + right_node.slope_plus * x;
}

IfeBasisLocal make_interface_basis(double x_left, double x_right,
                                   double kappa_minus, double kappa_plus) {
  if (!(x_left < 0.0 && 0.0 < x_right)) {
    throw std::invalid_argument(
        "interface_basis: interface must lie strictly inside the element");
  }
  if (!(kappa_minus > 0.0) || !(kappa_plus > 0.0)) {
    throw std::invalid_argument("interface_basis: kappa must be positive");
  }
  const double a = -x_left;
  const double b = x_right;
  const double den = a * kappa_plus + b * kappa_minus;
  IfeBasisLocal basis;
  basis.x_left = x_left;
  basis.x_right = x_right;
  basis.left_node = {-kappa_plus / den, -kappa_minus / den,
                     b * kappa_minus / den};
  basis.right_node = {kappa_plus / den, kappa_minus / den,
                      a * kappa_plus / den};
  return basis;
}

IfeBasisLocal interface_basis(const Mesh1D& mesh, double kappa_minus,
                              double kappa_plus) {
  if (mesh.interface_element < 0) {
    throw std::logic_error(
        "interface_basis: interface sits on a node; standard hats apply");
  }
  return make_interface_basis(mesh.nodes[mesh.interface_element],
                              mesh.nodes[mesh.interface_element + 1],
                              kappa_minus, kappa_plus);
}

std::pair<TridiagonalSystem, TridiagonalSystem> assemble(
    const Mesh1D& mesh, const std::optional<IfeBasisLocal>& basis,
    const SymmetrizedCoefficients& coeffs) {
  auto [mass, stiff] =
      assemble_weighted(mesh, basis, coeffs.c_minus, coeffs.c_plus,
                        coeffs.kappa_minus, coeffs.kappa_plus);
  mass.role = MatrixRole::mass;
  stiff.role = MatrixRole::stiffness;
  return {std::move(mass), std::move(stiff)};
}

TridiagonalSystem assemble_unweighted_mass(
    const Mesh1D& mesh, const std::optional<IfeBasisLocal>& basis) {
  // The kappa weights only enter through the basis itself, which is given.
  auto [mass, stiff] = assemble_weighted(mesh, basis, 1.0, 1.0, 1.0, 1.0);
  (void)stiff;
  mass.role = MatrixRole::unweighted_mass;
  return std::move(mass);
}

std::vector<double> l2_project_initial(const Mesh1D& mesh,
                                       const std::optional<IfeBasisLocal>& basis,
                                       const TridiagonalSystem& unweighted_mass,
                                       const InitialProfile& u0) {
  const int n_interior = mesh.n_elements - 1;
  if (unweighted_mass.size() != n_interior) {
    throw std::invalid_argument("l2_project_initial: mass matrix size mismatch");
  }
  static const GaussRule rule = gauss_legendre(7);
  std::vector<double> rhs(n_interior, 0.0);
  for (int e = 0; e < mesh.n_elements; ++e) {
    const double xl = mesh.nodes[e];
    const double xr = mesh.nodes[e + 1];
    if (xr <= u0.support_lo || xl >= u0.support_hi) continue;
    double cuts[4] = {xl, xr, xr, xr};
    int n_cuts = 2;
    if (e == mesh.interface_element) cuts[n_cuts++] = 0.0;
    for (double s : {u0.support_lo, u0.support_hi}) {
      if (s > xl && s < xr) cuts[n_cuts++] = s;
    }
    std::sort(cuts, cuts + n_cuts);
    for (int seg = 0; seg + 1 < n_cuts; ++seg) {
      const double p = cuts[seg];
      const double q = cuts[seg + 1];
      if (!(q > p)) continue;
      const double mid = 0.5 * (p + q);
      const double half = 0.5 * (q - p);
      for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
        const double x = mid + half * rule.nodes[g];
        const double w = half * rule.weights[g];
        const double val = u0(x);
        if (!std::isfinite(val)) {
          throw std::runtime_error(
              "l2_project_initial: u0 evaluated to a non-finite value");
        }
        double phi_l, phi_r;
        if (e == mesh.interface_element && basis) {
          phi_l = basis->eval_left(x);
          phi_r = basis->eval_right(x);
        } else {
          phi_l = (xr - x) / (xr - xl);
          phi_r = (x - xl) / (xr - xl);
        }
        if (e - 1 >= 0) rhs[e - 1] += w * val * phi_l;
        if (e < n_interior) rhs[e] += w * val * phi_r;
      }
    }
  }
  std::vector<double> interior = solve_tridiagonal(unweighted_mass, std::move(rhs));
  std::vector<double> full(mesh.n_elements + 1, 0.0);
  std::copy(interior.begin(), interior.end(), full.begin() + 1);
  return full;
}

IfeSystem build_ife_system(const InterfaceProblem& p, int n_elements) {
  validate_problem(p);
  IfeSystem sys;
  sys.mesh = build_mesh(p.half_width, n_elements);
  sys.coeffs = symmetrize(p);
  if (!sys.mesh.interface_on_node()) {
    sys.basis = interface_basis(sys.mesh, sys.coeffs.kappa_minus,
                                sys.coeffs.kappa_plus);
  }
  auto [mass, stiff] = assemble(sys.mesh, sys.basis, sys.coeffs);
  sys.mass = std::move(mass);
  sys.stiffness = std::move(stiff);
  return sys;
}

double explicit_stability_limit(const IfeSystem& system) {
  const TridiagonalSystem& m = system.mass;
  const TridiagonalSystem& k = system.stiffness;
  const int n = m.size();
  double max_ratio = 0.0;
  for (int i = 0; i < n; ++i) {
    const double off_l = i > 0 ? std::abs(m.off[i - 1]) : 0.0;
    const double off_r = i + 1 < n ? std::abs(m.off[i]) : 0.0;
    const double m_low = m.diag[i] - off_l - off_r;
    if (!(m_low > 0.0)) return 0.0;
    const double k_high = k.diag[i] + (i > 0 ? std::abs(k.off[i - 1]) : 0.0) +
                          (i + 1 < n ? std::abs(k.off[i]) : 0.0);
    max_ratio = std::max(max_ratio, k_high / m_low);
  }
  return max_ratio > 0.0 ? 2.0 / max_ratio : 0.0;
}

DiscreteSolution theta_scheme_solve(const InterfaceProblem& p,
                                    const Mesh1D& mesh, double theta, double dt,
                                    StartupDamping startup) {
  validate_problem(p);
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::invalid_argument("theta: must lie in [0, 1]");
  }
  if (!(dt > 0.0)) throw std::invalid_argument("dt: must be positive");
  if (mesh.half_width != p.half_width) {
    throw std::invalid_argument("mesh: half_width differs from the problem");
  }

  const double ratio = p.final_time / dt;
  std::int64_t n_steps = std::llround(ratio);
  if (n_steps < 1 ||
      std::abs(static_cast<double>(n_steps) - ratio) > kDivisionSlack * ratio) {
    n_steps = static_cast<std::int64_t>(std::ceil(ratio - kDivisionSlack));
    if (n_steps < 1) n_steps = 1;
  }
  const double dt_eff = p.final_time / static_cast<double>(n_steps);

  DiscreteSolution sol;
  sol.system = build_ife_system(p, mesh.n_elements);
  sol.theta = theta;
  sol.dt = dt_eff;

  const Mesh1D& m = sol.system.mesh;
  const TridiagonalSystem m0 = assemble_unweighted_mass(m, sol.system.basis);
  std::vector<double> full = l2_project_initial(m, sol.system.basis, m0, p.u0);

  if (theta < 0.5) {
    const double limit = explicit_stability_limit(sol.system);
    if (limit > 0.0 && dt_eff > limit) {
      sol.warnings.push_back(
          "explicit step " + std::to_string(dt_eff) +
          " exceeds the stability estimate " + std::to_string(limit));
    }
  }

  const int n_interior = m.n_elements - 1;
  std::vector<double> u(full.begin() + 1, full.begin() + 1 + n_interior);
  sol.coeffs.reserve(static_cast<std::size_t>(n_steps) + 1);
  sol.coeffs.push_back(full);

  const auto push_level = [&](const std::vector<double>& interior) {
    std::vector<double> level(m.n_elements + 1, 0.0);
    std::copy(interior.begin(), interior.end(), level.begin() + 1);
    sol.coeffs.push_back(std::move(level));
  };

  const TridiagonalSystem& mass = sol.system.mass;
  const TridiagonalSystem& stiff = sol.system.stiffness;
  const TridiagonalFactor lhs(combine(mass, 1.0, stiff, theta * dt_eff));
  const TridiagonalSystem rhs_mat =
      combine(mass, 1.0, stiff, -(1.0 - theta) * dt_eff);

  std::int64_t first_regular_step = 0;
  if (startup == StartupDamping::damped) {
    const TridiagonalFactor half(combine(mass, 1.0, stiff, 0.5 * dt_eff));
    u = half.solve(multiply(mass, u));
    u = half.solve(multiply(mass, u));
    push_level(u);
    first_regular_step = 1;
  }
  for (std::int64_t k = first_regular_step; k < n_steps; ++k) {
    u = lhs.solve(multiply(rhs_mat, u));
    push_level(u);
  }
  return sol;
}

double evaluate_uh(const DiscreteSolution& sol, int t_index, double x) {
  if (t_index < 0 || t_index > sol.n_steps()) {
    throw std::invalid_argument("t_index: out of range");
  }
  const Mesh1D& mesh = sol.system.mesh;
  const double lim = mesh.half_width * (1.0 + 1e-12);
  if (!(x >= -lim && x <= lim)) {
    throw std::domain_error("x: outside the computational domain");
  }
  x = std::clamp(x, -mesh.half_width, mesh.half_width);
  int e = static_cast<int>((x + mesh.half_width) / mesh.h);
  e = std::clamp(e, 0, mesh.n_elements - 1);
  if (x < mesh.nodes[e] && e > 0) --e;
  if (x > mesh.nodes[e + 1] && e + 1 < mesh.n_elements) ++e;
  const std::vector<double>& level = sol.coeffs[t_index];
  const double ul = level[e];
  const double ur = level[e + 1];
  if (e == mesh.interface_element && sol.system.basis) {
    return ul * sol.system.basis->eval_left(x) +
           ur * sol.system.basis->eval_right(x);
  }
  const double xl = mesh.nodes[e];
  const double xr = mesh.nodes[e + 1];
  return (ul * (xr - x) + ur * (x - xl)) / (xr - xl);
}

}  // namespace skewdiff
