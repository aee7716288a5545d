#include <cmath>
#include <cstdlib>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "shoot/adjoint.hpp"
#include "shoot/cli/cli.hpp"
#include "shoot/error.hpp"
#include "shoot/sensitivity.hpp"

namespace shoot::cli {

namespace {

constexpr double kVerifyThreshold = 1e-4;

std::string vector_string(const Vector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

Parameters parse_overrides(const std::vector<std::string>& items) {
  Parameters out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(Errc::InvalidArgument, "--set expects name=value, got '" + item + "'");
    }
    const Vector v = parse_guess(item.substr(eq + 1));
    if (v.size() != 1) throw Error(Errc::InvalidArgument, "--set value must be a single number");
    out[item.substr(0, eq)] = v[0];
  }
  return out;
}

Vector starting_guess(const ExampleSpec& example, const RunConfig& cfg) {
  Vector c = cfg.guess ? *cfg.guess
                       : (example.default_guesses.empty() ? Vector(example.problem.free_count(), 0.0)
                                                          : example.default_guesses.front());
  if (c.size() != example.problem.free_count()) {
    throw Error(Errc::DimensionMismatch, "problem " + example.name + " has " +
                                             std::to_string(example.problem.free_count()) +
                                             " unknown initial values, guess has " +
                                             std::to_string(c.size()));
  }
  return c;
}

}  // namespace

SolveOptions RunConfig::solve_options() const {
  SolveOptions opts;
  opts.jacobian_mode = jacobian;
  opts.max_iter = max_iter;
  opts.integrator.rtol = rtol;
  opts.integrator.atol = atol;
  return opts;
}

int exit_code(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Converged: return kOk;
    case SolveStatus::NotConverged: return kNotConverged;
    case SolveStatus::SingularJacobian: return kSingularJacobian;
    case SolveStatus::IntegrationFailure: return kIntegrationFailure;
  }
  return kNotConverged;
}

Vector parse_guess(std::string_view text) {
  Vector out;
  std::string s(text);
  std::size_t pos = 0;
  while (true) {
    const auto comma = s.find(',', pos);
    std::string item = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const auto first = item.find_first_not_of(" \t");
    item = first == std::string::npos ? "" : item.substr(first, item.find_last_not_of(" \t") - first + 1);
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() || !std::isfinite(v)) {
      throw Error(Errc::InvalidArgument, "cannot parse number '" + item + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

int cmd_solve(const ExampleSpec& example, const RunConfig& cfg, std::ostream& out,
              std::ostream& err) {
  const Vector c0 = starting_guess(example, cfg);
  const SolveReport report = solve_bvp(example.problem, c0, cfg.solve_options());

  out << "problem " << example.name << ": " << example.title << '\n';
  out << "jacobian: " << to_string(cfg.jacobian) << ", guess: " << vector_string(c0) << '\n';
  if (report.converged) {
    out << "converged after " << report.newton_steps() << " Newton steps\n\n";
  } else {
    out << to_string(report.status) << " after " << report.newton_steps() << " Newton steps\n\n";
  }
  out << boundary_table(example, report);

  try {
    if (cfg.out_trace) write_trace_csv(report, *cfg.out_trace);
    if (!report.final_trajectory.empty()) {
      if (cfg.out_trajectory) write_trajectory_csv(report.final_trajectory, *cfg.out_trajectory);
      if (cfg.out_svg) {
        write_svg(report.final_trajectory, example.labels, example.name + ": " + example.title,
                  *cfg.out_svg);
      }
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }

  if (!report.converged) err << "error: " << to_string(report.status) << ": " << report.message << '\n';
  return exit_code(report.status);
}

int cmd_verify(const ExampleSpec& example, const RunConfig& cfg, std::ostream& out,
               std::ostream& err) {
  const BvProblem& p = example.problem;
  const IntegratorConfig icfg = cfg.solve_options().integrator;
  Vector c = starting_guess(example, cfg);
  if (cfg.at_solution) {
    const SolveReport report = solve_bvp(p, c, cfg.solve_options());
    if (!report.converged) {
      err << "error: cannot verify at solution: " << to_string(report.status) << ": "
          << report.message << '\n';
      return exit_code(report.status);
    }
    c = report.c_final;
  }

  const auto fwd = forward_jacobian(p, c, icfg);
  const auto adj = adjoint_jacobian(p, c, icfg);
  const Matrix fd = fd_shooting_jacobian(p, c, icfg);
  const double d_adj = max_abs_diff(fwd.jacobian, adj.jacobian);
  const double d_fd = max_abs_diff(fwd.jacobian, fd);
  const double d_thm = theorem1_check(p, embed_initial(p, c), icfg);
  Vector delta(p.free_count(), 0.0);
  delta[0] = 1.0;
  const Perturbation pert = linearized_perturbation(p, adj.trajectory, delta, icfg);
  const double drift = bilinear_invariant(adj.bundle.columns.front().trajectory, pert.trajectory, 101);

  const bool ok = d_adj <= kVerifyThreshold && d_fd <= kVerifyThreshold &&
                  d_thm <= kVerifyThreshold && drift <= kVerifyThreshold;
  out << "problem " << example.name << " at c = " << vector_string(c) << '\n';
  out << "forward vs adjoint Jacobian       max|diff| = " << sci(d_adj) << '\n';
  out << "forward vs finite-diff Jacobian   max|diff| = " << sci(d_fd) << '\n';
  out << "adjoint transition vs sensitivity max|diff| = " << sci(d_thm) << '\n';
  out << "bilinear invariant drift          max|diff| = " << sci(drift) << '\n';
  out << "all deviations <= " << sci(kVerifyThreshold) << ": " << (ok ? "yes" : "no") << '\n';
  return ok ? kOk : kNotConverged;
}

int cmd_list(bool json, std::ostream& out) {
  const auto examples = registry();
  if (json) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& ex : examples) {
      arr.push_back({{"name", ex.name},
                     {"title", ex.title},
                     {"n", ex.problem.dimension()},
                     {"interval", {ex.problem.a(), ex.problem.b()}},
                     {"free", ex.problem.free_count()},
                     {"guesses", ex.default_guesses},
                     {"labels", ex.labels},
                     {"parameters", ex.parameters}});
    }
    out << arr.dump(2) << '\n';
    return kOk;
  }
  for (const auto& ex : examples) {
    out << ex.name << "  n=" << ex.problem.dimension() << "  interval=[" << ex.problem.a() << ','
        << ex.problem.b() << "]  free=" << ex.problem.free_count() << "  guesses=";
    for (std::size_t i = 0; i < ex.default_guesses.size(); ++i) {
      out << (i ? " " : "") << vector_string(ex.default_guesses[i]);
    }
    out << '\n';
  }
  return kOk;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Shooting-method solver for two-point boundary value problems", "shoot"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string guess_text;
  std::string jacobian_text = "forward";
  std::vector<std::string> sets;
  std::string out_path, trace_path, svg_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--problem", cfg.problem, "Problem name (ex1..ex4)")->required();
    sub->add_option("--guess", guess_text, "Unknown initial values, comma separated");
    sub->add_option("--jacobian", jacobian_text, "forward | adjoint | fd");
    sub->add_option("--rtol", cfg.rtol, "Integrator relative tolerance");
    sub->add_option("--atol", cfg.atol, "Integrator absolute tolerance");
    sub->add_option("--max-iter", cfg.max_iter, "Newton iteration limit");
    sub->add_option("--set", sets, "Parameter override name=value (repeatable)");
  };

  CLI::App* solve = app.add_subcommand("solve", "Solve a built-in problem by shooting");
  add_common(solve);
  solve->add_option("--out", out_path, "Trajectory CSV path");
  solve->add_option("--trace", trace_path, "Iteration trace CSV path");
  solve->add_option("--svg", svg_path, "SVG plot path");

  CLI::App* verify = app.add_subcommand("verify", "Cross-check the Jacobian strategies");
  add_common(verify);
  verify->add_flag("--at-solution", cfg.at_solution, "Verify at the converged solution");

  CLI::App* list = app.add_subcommand("list", "List built-in problems");
  list->add_flag("--json", cfg.json, "Machine-readable output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  if (list->parsed()) return cmd_list(cfg.json, out);

  try {
    const auto mode = parse_jacobian_mode(jacobian_text);
    if (!mode) throw Error(Errc::InvalidArgument, "unknown jacobian mode '" + jacobian_text + "'");
    cfg.jacobian = *mode;
    if (!guess_text.empty()) cfg.guess = parse_guess(guess_text);
    cfg.overrides = parse_overrides(sets);
    if (!out_path.empty()) cfg.out_trajectory = out_path;
    if (!trace_path.empty()) cfg.out_trace = trace_path;
    if (!svg_path.empty()) cfg.out_svg = svg_path;
    const ExampleSpec example = make_example(cfg.problem, cfg.overrides);
    return solve->parsed() ? cmd_solve(example, cfg, out, err) : cmd_verify(example, cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (e.is_integration_failure()) return kIntegrationFailure;
    if (e.code() == Errc::SingularMatrix) return kSingularJacobian;
    return kInvalidInput;
  }
}

}  // namespace shoot::cli
