#include "skewdiff/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "skewdiff/harness.hpp"
#include "skewdiff/ifem.hpp"
#include "skewdiff/oracle.hpp"
#include "skewdiff/problem.hpp"
#include "skewdiff/sde.hpp"

namespace skewdiff::cli {

namespace {

// Thrown after help text has already been printed; maps to exit 0.
struct HelpShown : UsageError {
  HelpShown() : UsageError("help requested") {}
};

struct TimerScope {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::string format_g17(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Command command_from(const std::string& name) {
  if (name == "solve-pde") return Command::solve_pde;
  if (name == "simulate-sde") return Command::simulate_sde;
  if (name == "exact") return Command::exact;
  if (name == "converge") return Command::converge;
  throw UsageError("command: unknown command '" + name + "'");
}

double resolve_lambda(const std::string& token, double d_plus, double d_minus) {
  if (token == "lambda-star") return lambda_star(d_plus, d_minus);
  if (token == "lambda-sharp") return 0.5;
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used == token.size()) return value;
  } catch (const std::exception&) {
  }
  throw UsageError("lambda: unresolvable token '" + token + "'");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

void check_mesh_divisibility(double half_width, double h) {
  const double elements = 2.0 * half_width / h;
  const double rounded = std::round(elements);
  require(rounded >= 2.0 && std::abs(elements - rounded) <= 1e-9 * elements,
          "h: " + format_g17(h) + " must divide the domain width " +
              format_g17(2.0 * half_width));
}

Method method_from(const std::string& name) {
  if (name == "ifem-be") return Method::ifem_be;
  if (name == "ifem-cn") return Method::ifem_cn;
  if (name == "sde-em") return Method::sde_em;
  throw UsageError("method: unknown method '" + name +
                   "' (expected ifem-be, ifem-cn or sde-em)");
}

struct PresetEntry {
  char letter;
  double d_plus;
  bool lambda_is_star;
};

constexpr PresetEntry kPresetGrid[4] = {
    {'a', 10.0, false},
    {'b', 100.0, false},
    {'c', 10.0, true},
    {'d', 100.0, true},
};

std::vector<Scenario> expand_preset(const RunConfig& cfg) {
  const std::string& name = cfg.preset;
  require(name.size() >= 4 && name.compare(0, 3, "fig") == 0,
          "preset: unknown preset '" + name + "'");
  const char figure = name[3];
  require(figure == '2' || figure == '3' || figure == '4',
          "preset: unknown preset '" + name + "'");
  std::optional<char> letter;
  if (name.size() == 5) letter = name[4];
  require(name.size() <= 5 && (!letter || (*letter >= 'a' && *letter <= 'd')),
          "preset: unknown preset '" + name + "'");

  const double final_time = 0.2;
  std::vector<Scenario> scenarios;
  for (const PresetEntry& entry : kPresetGrid) {
    if (letter && entry.letter != *letter) continue;
    Scenario base;
    base.id = std::string(name, 0, 4) + entry.letter;
    base.d_plus = entry.d_plus;
    base.d_minus = 1.0;
    base.lambda = entry.lambda_is_star ? lambda_star(entry.d_plus, 1.0) : 0.5;
    base.final_time = final_time;
    base.seed = cfg.seed;
    base.n_workers = cfg.workers;
    if (figure == '4') {
      base.method = Method::sde_em;
      for (int k = 4; k <= 9; ++k) {
        base.resolutions.push_back(final_time / std::pow(2.0, k));
      }
      base.n_paths = cfg.n_paths;
      const std::vector<double> points =
          cfg.points.empty() ? std::vector<double>{-1.5, 0.0, 2.5} : cfg.points;
      for (double x : points) {
        Scenario s = base;
        s.eval_point = x;
        s.id += ":x=" + format_g17(x);
        scenarios.push_back(std::move(s));
      }
    } else {
      base.method = figure == '2' ? Method::ifem_be : Method::ifem_cn;
      base.resolutions = {0.2, 0.1, 0.05, 0.025};
      scenarios.push_back(std::move(base));
    }
  }
  return scenarios;
}

std::vector<Scenario> scenarios_from_flags(const RunConfig& cfg) {
  require(!cfg.method.empty(),
          "method: required for converge without a preset");
  Scenario base;
  base.method = method_from(cfg.method);
  base.id = "custom";
  base.d_plus = cfg.d_plus;
  base.d_minus = cfg.d_minus;
  base.lambda = cfg.lambda;
  base.final_time = cfg.final_time;
  base.half_width = cfg.half_width;
  base.seed = cfg.seed;
  base.n_workers = cfg.workers;
  std::vector<Scenario> scenarios;
  if (base.method == Method::sde_em) {
    if (cfg.dt_list.empty()) {
      for (int k = 4; k <= 9; ++k) {
        base.resolutions.push_back(cfg.final_time / std::pow(2.0, k));
      }
    } else {
      base.resolutions = cfg.dt_list;
    }
    base.n_paths = cfg.n_paths;
    const std::vector<double> points =
        cfg.points.empty() ? std::vector<double>{-1.5, 0.0, 2.5} : cfg.points;
    for (double x : points) {
      Scenario s = base;
      s.eval_point = x;
      s.id += ":x=" + format_g17(x);
      scenarios.push_back(std::move(s));
    }
  } else {
    base.resolutions =
        cfg.h_list.empty() ? std::vector<double>{0.2, 0.1, 0.05, 0.025}
                           : cfg.h_list;
    const double half_width =
        cfg.half_width > 0.0
            ? cfg.half_width
            : auto_half_width(cfg.d_plus, cfg.d_minus, cfg.final_time);
    for (double h : base.resolutions) check_mesh_divisibility(half_width, h);
    scenarios.push_back(std::move(base));
  }
  return scenarios;
}

struct RawFlags {
  std::string command;
  std::string lambda_token;
};

std::unique_ptr<CLI::App> build_app(RunConfig& cfg, RawFlags& raw) {
  auto app = std::make_unique<CLI::App>(
      "skewdiff: immersed finite elements, exact densities and "
      "Euler-Maruyama Monte Carlo for diffusion across an interface");
  app->name("skewdiff");
  // The mesh-width flag is spelled --h, which CLI11 would treat as clashing
  // with the default -h short help flag; keep help reachable as --help only.
  app->set_help_flag("--help", "print this usage summary");
  app->set_config("--config", "",
                  "flat key=value config file; flags override file values");
  app->add_option("command", raw.command,
                  "solve-pde | simulate-sde | exact | converge")
      ->required();
  app->add_option("--dplus", cfg.d_plus, "diffusion coefficient for x > 0");
  app->add_option("--dminus", cfg.d_minus, "diffusion coefficient for x < 0");
  app->add_option("--lambda", raw.lambda_token,
                  "interface parameter: number, lambda-star or lambda-sharp");
  app->add_option("--T", cfg.final_time, "final time");
  app->add_option("--L", cfg.half_width,
                  "half width of the computational domain (0 = automatic)");
  app->add_option("--theta", cfg.theta, "time-stepping parameter in [0, 1]");
  app->add_option("--startup", cfg.startup,
                  "solve-pde start-up: none | damped")
      ->check(CLI::IsMember({"none", "damped"}));
  app->add_option("--h", cfg.h_list,
                  "mesh width; a comma-separated ladder for converge")
      ->delimiter(',');
  app->add_option("--dt", cfg.dt_list,
                  "time step; a comma-separated ladder for converge")
      ->delimiter(',');
  app->add_option("--paths", cfg.n_paths, "Monte Carlo sample paths");
  app->add_option("--seed", cfg.seed, "RNG seed");
  app->add_option("--points", cfg.points,
                  "evaluation points (comma separated)")
      ->delimiter(',');
  app->add_option("--x", cfg.x, "single evaluation or start point");
  app->add_option("--t", cfg.t, "evaluation time for exact (default: T)");
  app->add_option("--method", cfg.method,
                  "converge method: ifem-be | ifem-cn | sde-em");
  app->add_option("--preset", cfg.preset,
                  "converge preset: fig2|fig3|fig4 with optional letter a-d "
                  "(a: D+=10 lambda-sharp, b: D+=100 lambda-sharp, "
                  "c: D+=10 lambda-star, d: D+=100 lambda-star)");
  app->add_option("--out", cfg.out_path, "artifact output path");
  app->add_flag("--no-timing", cfg.no_timing,
                "zero out timing fields so artifacts compare byte-for-byte");
  app->add_option("--workers", cfg.workers,
                  "Monte Carlo worker threads (0 = hardware, capped by "
                  "SKEWDIFF_THREADS)");
  app->footer(
      "Presets bind the canonical problem parameters; --paths, --seed, "
      "--points, --workers and output flags still apply.");
  return app;
}

void finalize(RunConfig& cfg, const RawFlags& raw) {
  cfg.command = command_from(raw.command);
  require(std::isfinite(cfg.d_plus) && cfg.d_plus > 0.0,
          "dplus: must be positive");
  require(std::isfinite(cfg.d_minus) && cfg.d_minus > 0.0,
          "dminus: must be positive");
  if (!raw.lambda_token.empty()) {
    cfg.lambda_token = raw.lambda_token;
    cfg.lambda = resolve_lambda(raw.lambda_token, cfg.d_plus, cfg.d_minus);
  }
  require(cfg.lambda > 0.0 && cfg.lambda < 1.0, "lambda: must lie in (0, 1)");
  require(std::isfinite(cfg.final_time) && cfg.final_time > 0.0,
          "T: must be positive");
  require(std::isfinite(cfg.half_width) && cfg.half_width >= 0.0,
          "L: must be nonnegative");
  require(cfg.theta >= 0.0 && cfg.theta <= 1.0, "theta: must lie in [0, 1]");
  require(cfg.n_paths >= 1, "paths: must be at least 1");
  require(cfg.workers >= 0, "workers: must be nonnegative");
  require(cfg.t < 0.0 ? cfg.t == -1.0 : true, "t: must be nonnegative");
  for (double h : cfg.h_list) require(h > 0.0, "h: must be positive");
  for (double dt : cfg.dt_list) require(dt > 0.0, "dt: must be positive");
  require(cfg.preset.empty() || cfg.command == Command::converge,
          "preset: only applies to converge");
  if (cfg.command == Command::solve_pde) {
    require(cfg.h_list.size() <= 1, "h: solve-pde takes a single value");
    require(cfg.dt_list.size() <= 1, "dt: solve-pde takes a single value");
  }
  if (cfg.command == Command::simulate_sde) {
    require(cfg.dt_list.size() <= 1, "dt: simulate-sde takes a single value");
  }
  if (cfg.half_width == 0.0) {
    cfg.half_width =
        auto_half_width(cfg.d_plus, cfg.d_minus, cfg.final_time);
  }
  if (cfg.command == Command::solve_pde) {
    const double h = cfg.h_list.empty() ? 0.05 : cfg.h_list.front();
    check_mesh_divisibility(cfg.half_width, h);
  }
  if (cfg.command == Command::simulate_sde) {
    const double dt =
        cfg.dt_list.empty() ? cfg.final_time / 512.0 : cfg.dt_list.front();
    try {
      step_count(cfg.final_time, dt);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
}

InterfaceProblem problem_from(const RunConfig& cfg) {
  InterfaceProblem p;
  p.d_plus = cfg.d_plus;
  p.d_minus = cfg.d_minus;
  p.lambda = cfg.lambda;
  p.final_time = cfg.final_time;
  p.half_width = cfg.half_width;
  return p;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw IoError("out: cannot open '" + path + "' for writing");
  return file;
}

void finish_output(std::ofstream& file, const std::string& path) {
  file.flush();
  if (!file) throw IoError("out: failed writing '" + path + "'");
}

void run_solve_pde(const RunConfig& cfg, std::ostream& out) {
  const TimerScope timer;
  const InterfaceProblem problem = problem_from(cfg);
  const double h = cfg.h_list.empty() ? 0.05 : cfg.h_list.front();
  const double dt = cfg.dt_list.empty() ? h * h : cfg.dt_list.front();
  const auto n =
      static_cast<int>(std::llround(2.0 * cfg.half_width / h));
  const Mesh1D mesh = build_mesh(cfg.half_width, n);
  const StartupDamping startup = cfg.startup == "damped"
                                     ? StartupDamping::damped
                                     : StartupDamping::none;
  const DiscreteSolution sol =
      theta_scheme_solve(problem, mesh, cfg.theta, dt, startup);
  for (const std::string& w : sol.warnings) out << "warning: " << w << "\n";
  const int last = sol.n_steps();
  if (!cfg.out_path.empty()) {
    std::ofstream file = open_output(cfg.out_path);
    file << "x,u\n";
    for (int i = 0; i <= mesh.n_elements; ++i) {
      file << format_g17(mesh.nodes[i]) << ',' << format_g17(sol.coeffs[last][i])
           << '\n';
    }
    finish_output(file, cfg.out_path);
  }
  out << "solve-pde D+=" << format_g17(cfg.d_plus)
      << " D-=" << format_g17(cfg.d_minus)
      << " lambda=" << format_g17(cfg.lambda) << " h=" << format_g17(h)
      << " theta=" << format_g17(cfg.theta)
      << " u(T,0)=" << format_g17(evaluate_uh(sol, last, 0.0));
  if (!cfg.no_timing) out << " wall-ms=" << format_g17(timer.elapsed_ms());
  out << "\n";
}

void run_simulate_sde(const RunConfig& cfg, std::ostream& out) {
  const InterfaceProblem problem = problem_from(cfg);
  const double dt =
      cfg.dt_list.empty() ? cfg.final_time / 512.0 : cfg.dt_list.front();
  const std::vector<double> points =
      cfg.points.empty() ? std::vector<double>{cfg.x} : cfg.points;
  nlohmann::json artifact;
  artifact["command"] = "simulate-sde";
  artifact["d_plus"] = cfg.d_plus;
  artifact["d_minus"] = cfg.d_minus;
  artifact["lambda"] = cfg.lambda;
  artifact["final_time"] = cfg.final_time;
  artifact["delta_t"] = dt;
  artifact["n_paths"] = cfg.n_paths;
  artifact["seed"] = cfg.seed;
  artifact["estimates"] = nlohmann::json::array();
  for (double x0 : points) {
    const TimerScope timer;
    SimConfig sim;
    sim.delta_t = dt;
    sim.n_paths = cfg.n_paths;
    sim.seed = cfg.seed;
    sim.x0 = x0;
    sim.n_workers = cfg.workers;
    const McEstimate est = monte_carlo_estimate(problem, sim);
    artifact["estimates"].push_back({
        {"x0", x0},
        {"mean", est.mean},
        {"std_error", est.std_error},
    });
    out << "simulate-sde x0=" << format_g17(x0)
        << " mean=" << format_g17(est.mean)
        << " std-error=" << format_g17(est.std_error);
    if (!cfg.no_timing) out << " wall-ms=" << format_g17(timer.elapsed_ms());
    out << "\n";
  }
  if (!cfg.out_path.empty()) {
    std::ofstream file = open_output(cfg.out_path);
    file << artifact.dump(2) << "\n";
    finish_output(file, cfg.out_path);
  }
}

void run_exact(const RunConfig& cfg, std::ostream& out) {
  const TimerScope timer;
  const InterfaceProblem problem = problem_from(cfg);
  const double t = cfg.t < 0.0 ? cfg.final_time : cfg.t;
  const std::vector<double> points =
      cfg.points.empty() ? std::vector<double>{cfg.x} : cfg.points;
  nlohmann::json artifact;
  artifact["command"] = "exact";
  artifact["d_plus"] = cfg.d_plus;
  artifact["d_minus"] = cfg.d_minus;
  artifact["lambda"] = cfg.lambda;
  artifact["values"] = nlohmann::json::array();
  for (double x : points) {
    const double u = exact_solution_u(problem, t, x);
    artifact["values"].push_back({{"t", t}, {"x", x}, {"u", u}});
    out << "u(t=" << format_g17(t) << ", x=" << format_g17(x)
        << ") = " << format_g17(u) << "\n";
  }
  if (!cfg.no_timing) {
    out << "exact wall-ms=" << format_g17(timer.elapsed_ms()) << "\n";
  }
  if (!cfg.out_path.empty()) {
    std::ofstream file = open_output(cfg.out_path);
    file << artifact.dump(2) << "\n";
    finish_output(file, cfg.out_path);
  }
}

void run_converge(const RunConfig& cfg, std::ostream& out) {
  const std::vector<Scenario> scenarios =
      cfg.preset.empty() ? scenarios_from_flags(cfg) : expand_preset(cfg);
  std::vector<ConvergenceReport> reports;
  reports.reserve(scenarios.size());
  for (const Scenario& s : scenarios) reports.push_back(run_study(s));
  const bool timing = !cfg.no_timing;
  if (cfg.out_path.empty()) {
    write_csv(out, reports, timing);
  } else {
    std::ofstream file = open_output(cfg.out_path);
    write_csv(file, reports, timing);
    finish_output(file, cfg.out_path);
    std::filesystem::path json_path(cfg.out_path);
    json_path.replace_extension(".json");
    if (json_path == std::filesystem::path(cfg.out_path)) {
      json_path += ".summary.json";
    }
    std::ofstream json_file = open_output(json_path.string());
    json_file << summary_json(reports, timing) << "\n";
    finish_output(json_file, json_path.string());
  }
  for (const ConvergenceReport& report : reports) {
    out << report.scenario.id << ": slope=" << format_g17(report.fit.slope)
        << " rho=" << format_g17(report.diagnostics.rho) << "\n";
  }
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
  RunConfig cfg;
  RawFlags raw;
  const std::unique_ptr<CLI::App> app = build_app(cfg, raw);
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("skewdiff");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app->parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app->help();
    throw HelpShown();
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  finalize(cfg, raw);
  return cfg;
}

void dispatch(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::solve_pde:
      return run_solve_pde(cfg, out);
    case Command::simulate_sde:
      return run_simulate_sde(cfg, out);
    case Command::exact:
      return run_exact(cfg, out);
    case Command::converge:
      return run_converge(cfg, out);
  }
  throw std::logic_error("dispatch: unknown command");
}

int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  try {
    const RunConfig cfg = parse_config(args);
    dispatch(cfg, std::cout);
    return 0;
  } catch (const HelpShown&) {
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n"
              << "run 'skewdiff --help' for usage\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace skewdiff::cli
