#include "skewdiff/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "json.hpp"
#include "skewdiff/oracle.hpp"
#include "skewdiff/sde.hpp"

namespace skewdiff {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

double wall_ms_since(std::chrono::steady_clock::time_point start) {
  const auto elapsed = std::chrono::steady_clock::now() - start;
  return std::chrono::duration<double, std::milli>(elapsed).count();
}

void validate_scenario(const Scenario& s) {
  if (s.resolutions.size() < 3) {
    throw std::invalid_argument("resolutions: ladder needs at least 3 entries");
  }
  for (std::size_t i = 0; i < s.resolutions.size(); ++i) {
    if (!(s.resolutions[i] > 0.0)) {
      throw std::invalid_argument("resolutions: entries must be positive");
    }
    if (i > 0 && !(s.resolutions[i] < s.resolutions[i - 1])) {
      throw std::invalid_argument("resolutions: ladder must be strictly decreasing");
    }
  }
  if (s.method != Method::sde_em && !(s.window_lo < s.window_hi)) {
    throw std::invalid_argument("window: empty error window");
  }
  if (s.method == Method::sde_em && s.n_paths < 1) {
    throw std::invalid_argument("n_paths: must be >= 1");
  }
}

InterfaceProblem problem_from(const Scenario& s) {
  InterfaceProblem p;
  p.d_plus = s.d_plus;
  p.d_minus = s.d_minus;
  p.lambda = s.lambda;
  p.final_time = s.final_time;
  p.half_width = s.half_width > 0.0
                     ? s.half_width
                     : auto_half_width(s.d_plus, s.d_minus, s.final_time);
  return p;
}

// Mirrors the solver's downward adjustment of dt to divide final_time.
std::int64_t adjusted_steps(double final_time, double dt) {
  const double ratio = final_time / dt;
  std::int64_t steps = std::llround(ratio);
  if (steps < 1 || std::abs(static_cast<double>(steps) - ratio) > 1e-9 * ratio) {
    steps = static_cast<std::int64_t>(std::ceil(ratio - 1e-9));
    if (steps < 1) steps = 1;
  }
  return steps;
}

double slope_over_prefix(const std::vector<ReportRow>& rows, std::size_t count) {
  if (count < 2) return kNan;
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    pairs.emplace_back(rows[i].resolution, rows[i].error);
  }
  const FitResult fit = fit_rate(pairs);
  return fit.n_used >= 2 ? fit.slope : kNan;
}

std::string format_g17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::ifem_be:
      return "ifem-be";
    case Method::ifem_cn:
      return "ifem-cn";
    case Method::sde_em:
      return "sde-em";
  }
  throw std::logic_error("method_name: unknown method");
}

double error_l2_linf(const DiscreteSolution& sol,
                     const std::function<double(double, double)>& oracle,
                     double window_lo, double window_hi,
                     bool all_time_levels) {
  if (!(window_lo < window_hi)) {
    throw std::invalid_argument("window: empty error window");
  }
  const Mesh1D& mesh = sol.system.mesh;
  std::vector<int> in_window;
  for (int i = 0; i <= mesh.n_elements; ++i) {
    if (mesh.nodes[i] >= window_lo && mesh.nodes[i] <= window_hi) {
      in_window.push_back(i);
    }
  }
  if (in_window.empty()) {
    throw std::invalid_argument("window: contains no mesh nodes");
  }
  const int last = sol.n_steps();
  double worst = 0.0;
  for (int k = all_time_levels ? 0 : last; k <= last; ++k) {
    const double t = k * sol.dt;
    double sum = 0.0;
    for (int i : in_window) {
      const double e = sol.coeffs[k][i] - oracle(t, mesh.nodes[i]);
      sum += e * e;
    }
    worst = std::max(worst, std::sqrt(mesh.h * sum));
  }
  return worst;
}

FitResult fit_rate(const std::vector<std::pair<double, double>>& pairs) {
  FitResult fit;
  fit.slope = kNan;
  fit.intercept = kNan;
  std::vector<std::pair<double, double>> logs;
  logs.reserve(pairs.size());
  for (const auto& [resolution, error] : pairs) {
    if (!(resolution > 0.0)) {
      throw std::invalid_argument("fit_rate: resolutions must be positive");
    }
    if (!(error > 0.0) || !std::isfinite(error)) {
      fit.warnings.push_back("excluded nonpositive error at resolution " +
                             format_g17(resolution));
      continue;
    }
    logs.emplace_back(std::log(resolution), std::log(error));
  }
  fit.n_used = static_cast<int>(logs.size());
  if (fit.n_used < 2) {
    fit.warnings.push_back("fewer than 2 usable pairs; slope undefined");
    return fit;
  }
  double mx = 0.0, my = 0.0;
  for (const auto& [lx, ly] : logs) {
    mx += lx;
    my += ly;
  }
  mx /= fit.n_used;
  my /= fit.n_used;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [lx, ly] : logs) {
    sxx += (lx - mx) * (lx - mx);
    sxy += (lx - mx) * (ly - my);
  }
  if (!(sxx > 0.0)) {
    throw std::invalid_argument("fit_rate: resolutions must be distinct");
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

double auto_half_width(double d_plus, double d_minus, double final_time) {
  // Dirichlet truncation error must stay far below the h^2 scale inside the
  // error window; one diffusion length of margin is not enough once
  // sqrt(D T) grows past ~2.
  const double diffusion_length =
      std::sqrt(std::max(d_plus, d_minus) * final_time);
  return diffusion_length > 2.0 ? 20.0 : 10.0;
}

DiagnosticConstants compute_diagnostics(const InterfaceProblem& p,
                                        std::int64_t coarsest_steps) {
  const SymmetrizedCoefficients c = symmetrize(p);
  const double c_max = std::max(c.c_plus, c.c_minus);
  const double c_min = std::min(c.c_plus, c.c_minus);
  const double k_max = std::max(c.kappa_plus, c.kappa_minus);
  DiagnosticConstants d;
  d.rho = c.rho();
  d.alpha1 = c_max / c_min;
  d.alpha3 = std::sqrt(c_max / c_min);
  d.alpha4 = std::pow(d.alpha3, static_cast<double>(coarsest_steps - 1));
  d.alpha5 = std::sqrt(k_max) / std::sqrt(c_min);
  return d;
}

ConvergenceReport run_study(const Scenario& s) {
  validate_scenario(s);
  ConvergenceReport report;
  report.scenario = s;
  const InterfaceProblem problem = problem_from(s);
  report.scenario.half_width = problem.half_width;

  if (s.method == Method::sde_em) {
    const double reference =
        exact_solution_u(problem, problem.final_time, s.eval_point);
    for (double dt : s.resolutions) {
      const auto start = std::chrono::steady_clock::now();
      SimConfig cfg;
      cfg.delta_t = dt;
      cfg.n_paths = s.n_paths;
      cfg.seed = s.seed;
      cfg.x0 = s.eval_point;
      cfg.n_workers = s.n_workers;
      const McEstimate est = monte_carlo_estimate(problem, cfg);
      ReportRow row;
      row.resolution = dt;
      row.error = std::abs(est.mean - reference);
      row.std_error = est.std_error;
      row.wall_ms = wall_ms_since(start);
      report.rows.push_back(row);
      report.rows.back().slope_so_far =
          slope_over_prefix(report.rows, report.rows.size());
    }
    report.diagnostics = compute_diagnostics(
        problem, step_count(problem.final_time, s.resolutions.front()));
  } else {
    const bool backward_euler = s.method == Method::ifem_be;
    const auto oracle = [&problem](double t, double x) {
      return exact_solution_u(problem, t, x);
    };
    double coarsest_dt = 0.0;
    for (double h : s.resolutions) {
      const double elements = 2.0 * problem.half_width / h;
      const auto n = static_cast<std::int64_t>(std::llround(elements));
      if (n < 2 || std::abs(elements - static_cast<double>(n)) > 1e-9 * elements) {
        throw std::invalid_argument(
            "resolutions: h must divide the domain width");
      }
      const double dt = backward_euler ? h * h : h / 4.0;
      if (coarsest_dt == 0.0) coarsest_dt = dt;
      const auto start = std::chrono::steady_clock::now();
      const Mesh1D mesh = build_mesh(problem.half_width, static_cast<int>(n));
      const DiscreteSolution sol = theta_scheme_solve(
          problem, mesh, backward_euler ? 1.0 : 0.5, dt,
          backward_euler ? StartupDamping::none : StartupDamping::damped);
      ReportRow row;
      row.resolution = h;
      row.error = error_l2_linf(sol, oracle, s.window_lo, s.window_hi);
      row.wall_ms = wall_ms_since(start);
      report.rows.push_back(row);
      report.rows.back().slope_so_far =
          slope_over_prefix(report.rows, report.rows.size());
    }
    report.diagnostics = compute_diagnostics(
        problem, adjusted_steps(problem.final_time, coarsest_dt));
  }

  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(report.rows.size());
  for (const ReportRow& row : report.rows) {
    pairs.emplace_back(row.resolution, row.error);
  }
  report.fit = fit_rate(pairs);
  return report;
}

void write_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports,
               bool include_timing) {
  os << "scenario-id,method,D_plus,D_minus,lambda,resolution,error,"
        "slope-so-far,wall-ms\n";
  for (const ConvergenceReport& report : reports) {
    const Scenario& s = report.scenario;
    for (const ReportRow& row : report.rows) {
      os << s.id << ',' << method_name(s.method) << ',' << format_g17(s.d_plus)
         << ',' << format_g17(s.d_minus) << ',' << format_g17(s.lambda) << ','
         << format_g17(row.resolution) << ',' << format_g17(row.error) << ','
         << format_g17(row.slope_so_far) << ','
         << format_g17(include_timing ? row.wall_ms : 0.0) << '\n';
    }
  }
}

std::string summary_json(const std::vector<ConvergenceReport>& reports,
                         bool include_timing) {
  nlohmann::json doc;
  doc["reports"] = nlohmann::json::array();
  for (const ConvergenceReport& report : reports) {
    const Scenario& s = report.scenario;
    nlohmann::json entry;
    entry["scenario"] = {
        {"id", s.id},
        {"method", method_name(s.method)},
        {"d_plus", s.d_plus},
        {"d_minus", s.d_minus},
        {"lambda", s.lambda},
        {"final_time", s.final_time},
        {"half_width", s.half_width},
        {"seed", s.seed},
    };
    if (s.method == Method::sde_em) {
      entry["scenario"]["eval_point"] = s.eval_point;
      entry["scenario"]["n_paths"] = s.n_paths;
    } else {
      entry["scenario"]["window"] = {s.window_lo, s.window_hi};
    }
    entry["rows"] = nlohmann::json::array();
    for (const ReportRow& row : report.rows) {
      entry["rows"].push_back({
          {"resolution", row.resolution},
          {"error", row.error},
          {"std_error", row.std_error},
          {"slope_so_far", row.slope_so_far},
          {"wall_ms", include_timing ? row.wall_ms : 0.0},
      });
    }
    entry["fit"] = {
        {"slope", report.fit.slope},
        {"intercept", report.fit.intercept},
        {"n_used", report.fit.n_used},
        {"warnings", report.fit.warnings},
    };
    entry["diagnostics"] = {
        {"rho", report.diagnostics.rho},
        {"alpha1", report.diagnostics.alpha1},
        {"alpha3", report.diagnostics.alpha3},
        {"alpha4", report.diagnostics.alpha4},
        {"alpha5", report.diagnostics.alpha5},
    };
    doc["reports"].push_back(std::move(entry));
  }
  return doc.dump(2);
}

}  // namespace skewdiff
