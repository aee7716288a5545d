// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "shoot/cli/cli.hpp"
#include "shoot/shoot.hpp"

using namespace shoot;
namespace fs = std::filesystem;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string id) : id_(std::move(id)) {}

  void check(bool ok, const std::string& what) {
    if (!ok) {
      passed_ = false;
      if (!failures_.empty()) failures_ += "; ";
      failures_ += what;
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s = %.10g (want %.10g +- %.0e)", what.c_str(), got, want, tol);
    check(std::abs(got - want) <= tol, buf);
  }
  void at_most(double got, double bound, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s = %.3e (bound %.1e)", what.c_str(), got, bound);
    check(got <= bound, buf);
  }
  bool ok() const { return passed_; }
  void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }

  bool report(const std::string& title) const {
    std::printf("%s %s: %s\n", id_.c_str(), passed_ ? "PASS" : "FAIL", title.c_str());
    if (!passed_) std::printf("    %s\n", failures_.c_str());
    if (!notes_.empty()) std::printf("    %s\n", notes_.c_str());
    return passed_;
  }

 private:
  std::string id_;
  bool passed_ = true;
  std::string failures_;
  std::string notes_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rel(const Matrix& a, const Matrix& b) { return max_abs_diff(a, b) / (1.0 + max_abs(b)); }

struct Run {
  std::string name;
  Vector guess;
};

// Every run from the published tables; ex4 uses the registry guess (see README).
std::vector<Run> table_runs() {
  std::vector<Run> out;
  for (const auto& ex : registry()) {
    for (const auto& g : ex.default_guesses) out.push_back({ex.name, g});
  }
  return out;
}

bool ac1() {
  Criterion c("AC1");
  const auto ex = make_example("ex1");
  const auto r = solve_bvp(ex.problem, Vector{1.0});
  c.check(r.converged, "ex1 converged");
  if (r.converged) {
    c.near(r.c_final[0], 1.1596576, 1e-6, "y'(0)");
    c.near(r.final_state[0], 2.0, 1e-6, "y(1)");
    c.near(r.final_state[1], 5.1596576, 1e-6, "y'(1)");
  }
  return c.report("Example 1 from guess 1.0");
}

bool ac2() {
  Criterion c("AC2");
  const auto ex = make_example("ex2");
  for (const Vector& g : {Vector{0.0, 0.0}, Vector{-1.0, -1.0}}) {
    const auto r = solve_bvp(ex.problem, g);
    const std::string tag = "guess (" + fmt("%g", g[0]) + "," + fmt("%g", g[1]) + ") ";
    c.check(r.converged, tag + "converged");
    if (!r.converged) continue;
    c.near(r.c_final[0], -1.0013962, 1e-5, tag + "f''(0)");
    c.near(r.c_final[1], -0.4755621, 1e-5, tag + "theta'(0)");
    c.near(r.final_state[0], 0.9740442, 1e-5, tag + "f(5)");
    c.at_most(std::abs(r.final_state[1]), 1e-8, tag + "|f'(5)|");
    c.at_most(std::abs(r.final_state[3]), 1e-8, tag + "|theta(5)|");
    c.near(r.final_state[4], -0.0283081, 1e-5, tag + "theta'(5)");
  }
  return c.report("Example 2 case 1 from (0,0) and (-1,-1)");
}

bool ac3() {
  Criterion c("AC3");
  const auto ex = make_example("ex2");
  const auto r = solve_bvp(ex.problem, Vector{-2.0, 0.0});
  c.check(r.converged, "converged");
  if (r.converged) {
    c.near(r.c_final[0], -1.2108404, 1e-5, "f''(0)");
    c.near(r.c_final[1], -0.2921733, 1e-5, "theta'(0)");
    c.near(r.final_state[0], -0.8678587, 1e-5, "f(5)");
    c.near(r.final_state[2], 0.7142624, 1e-5, "f''(5)");
  }
  return c.report("Example 2 case 2 from (-2,0)");
}

bool ac4() {
  Criterion c("AC4");
  const auto ex = make_example("ex3");
  const double th[2] = {bratu_theta(1), bratu_theta(2)};
  c.near(th[0], 3.0362318, 1e-6, "theta1");
  c.near(th[1], 7.1350055, 1e-6, "theta2");
  const double guesses[2] = {0.0, 5.0};
  const double want[2] = {1.9447725, 6.7432737};
  for (int b = 0; b < 2; ++b) {
    const auto r = solve_bvp(ex.problem, Vector{guesses[b]});
    const std::string tag = "guess " + fmt("%g", guesses[b]) + " ";
    c.check(r.converged, tag + "converged");
    if (!r.converged) continue;
    c.near(r.c_final[0], want[b], 1e-6, tag + "u'(0)");
    c.near(r.c_final[0], th[b] * std::tanh(th[b] / 4.0), 1e-6, tag + "u'(0) vs theta tanh(theta/4)");
  }
  return c.report("Example 3 both branches");
}

void ex4_checks(Criterion& c, const SolveReport& r, const std::string& tag) {
  c.near(r.c_final[0], 0.0, 1e-7, tag + "x2(1)");
  c.near(r.final_state[1], 0.75, 1e-6, tag + "x2(2)");
  double worst = 0.0;
  for (int s = 0; s <= 100; ++s) {
    const double t = 1.0 + s / 100.0;
    worst = std::max(worst, std::abs(interpolate(r.final_trajectory, t)[0] - (t + 1.0 / t)));
  }
  c.at_most(worst, 1e-6, tag + "max |x1 - (t + 1/t)| over 101 points");
}

bool ac5() {
  Criterion c("AC5");
  const auto ex = make_example("ex4");
  const auto r = solve_bvp(ex.problem, Vector{0.5});
  c.check(r.converged, "from guess 0.5: status " + std::string(to_string(r.status)) +
                           (r.message.empty() ? "" : " (" + r.message + ")"));
  if (r.converged) ex4_checks(c, r, "guess 0.5 ");

  // Informational only: the same checks from the registry guess.
  Criterion info("");
  const auto d = solve_bvp(ex.problem, ex.default_guesses[0]);
  if (d.converged) {
    ex4_checks(info, d, "");
    c.note("not gating: from guess " + fmt("%g", ex.default_guesses[0][0]) + " x2(1) = " +
           fmt("%.3e", d.c_final[0]) + ", x2(2) = " + fmt("%.7f", d.final_state[1]) +
           (info.ok() ? ", closed form matched" : ", closed form NOT matched"));
  }
  return c.report("Example 4 from guess 0.5");
}

bool ac6() {
  Criterion c("AC6");
  double worst_adj = 0.0, worst_fd = 0.0;
  for (const auto& run : table_runs()) {
    const auto ex = make_example(run.name);
    const auto sol = solve_bvp(ex.problem, run.guess);
    c.check(sol.converged, run.name + " converged");
    for (const Vector& at : {run.guess, sol.c_final}) {
      const Matrix jf = forward_jacobian(ex.problem, at).jacobian;
      const Matrix ja = adjoint_jacobian(ex.problem, at).jacobian;
      const Matrix jd = fd_shooting_jacobian(ex.problem, at);
      const double fa = rel(jf, ja);
      const double fd = std::max(rel(jf, jd), rel(ja, jd));
      worst_adj = std::max(worst_adj, fa);
      worst_fd = std::max(worst_fd, fd);
      c.at_most(fa, 1e-6, run.name + " forward vs adjoint");
      c.at_most(fd, 1e-4, run.name + " analytic vs fd");
    }
  }
  c.note("worst forward/adjoint " + fmt("%.2e", worst_adj) + ", worst vs fd " + fmt("%.2e", worst_fd));
  return c.report("forward, adjoint and finite-difference Jacobians agree");
}

bool ac7() {
  Criterion c("AC7");
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst_t1 = 0.0, worst_bi = 0.0;
  for (const auto& ex : registry()) {
    const auto sol = solve_bvp(ex.problem, ex.default_guesses[0]);
    c.check(sol.converged, ex.name + " converged");
    if (!sol.converged) continue;
    const double t1 = theorem1_check(ex.problem, sol.initial_state);
    worst_t1 = std::max(worst_t1, t1);
    c.at_most(t1, 1e-6, ex.name + " transition identity");

    const Trajectory& st = sol.final_trajectory;
    const std::size_t n = ex.problem.dimension();
    for (int k = 0; k < 10; ++k) {
      Vector d(ex.problem.free_count());
      for (double& v : d) v = unit(gen);
      const std::size_t j = std::uniform_int_distribution<std::size_t>(0, n - 1)(gen);
      const auto col = integrate_adjoint(ex.problem, st, j);
      const auto pert = linearized_perturbation(ex.problem, st, d);
      const double pairing = dot(col.p_at_start, pert.delta0);
      const double drift = bilinear_invariant(col.trajectory, pert.trajectory, 101);
      const double bound = 1e-6 * (1.0 + std::abs(pairing));
      worst_bi = std::max(worst_bi, drift / bound);
      c.at_most(drift, bound, ex.name + " bilinear drift (e" + std::to_string(j + 1) + ")");
    }
  }
  c.note("worst transition identity " + fmt("%.2e", worst_t1) + ", worst drift/bound " + fmt("%.2e", worst_bi));
  return c.report("adjoint transition identity and bilinear invariant");
}

bool ac8() {
  Criterion c("AC8");
  for (const auto& run : table_runs()) {
    const auto ex = make_example(run.name);
    const auto r = solve_bvp(ex.problem, run.guess);
    c.check(r.converged, run.name + " converged");
    c.check(r.newton_steps() <= 12, run.name + " took " + std::to_string(r.newton_steps()) + " steps");
    c.at_most(r.iterations.back().residual_norm, 1e-8, run.name + " final residual");
  }

  RhsFunction zero{2, [](double, const Vector&) { return Vector{0.0, 0.0}; }};
  const BvProblem toy(2, 0.0, 1.0, zero, {{0, 0.0}}, {{1, 3.0}});
  const auto t = solve_bvp(toy, Vector{-4.0});
  c.check(t.converged && t.newton_steps() == 1,
          "affine toy took " + std::to_string(t.newton_steps()) + " steps");

  const auto r1 = solve_bvp(make_example("ex1").problem, Vector{1.0});
  for (std::size_t k = 0; k + 1 < r1.iterations.size(); ++k) {
    const double rk = r1.iterations[k].residual_norm, rk1 = r1.iterations[k + 1].residual_norm;
    if (rk <= 1e-2) c.at_most(rk1, 10.0 * rk * rk, "ex1 r" + std::to_string(k + 1));
  }
  return c.report("Newton convergence counts, one-step affine case, quadratic decay");
}

bool ac9() {
  Criterion c("AC9");
  double worst = 0.0;
  for (const auto& run : table_runs()) {
    const auto ex = make_example(run.name);
    std::vector<SolveReport> reports;
    for (JacobianMode mode : {JacobianMode::Forward, JacobianMode::Adjoint, JacobianMode::FiniteDifference}) {
      SolveOptions opts;
      opts.jacobian_mode = mode;
      reports.push_back(solve_bvp(ex.problem, run.guess, opts));
      c.check(reports.back().converged, run.name + " " + std::string(to_string(mode)) + " converged");
    }
    for (std::size_t m = 1; m < reports.size(); ++m) {
      for (std::size_t i = 0; i < run.guess.size(); ++i) {
        worst = std::max(worst, std::abs(reports[m].c_final[i] - reports[0].c_final[i]));
      }
    }
  }
  c.at_most(worst, 1e-5, "max c_final spread across modes");
  return c.report("all Jacobian modes reach the same solution");
}

bool ac10() {
  Criterion c("AC10");
  const auto r = solve_bvp(make_example("ex1").problem, Vector{1.0});
  c.check(r.converged, "converged");
  const auto inv = [](const Vector& x) { return x[1] - x[0] * x[0]; };
  c.at_most(std::abs(inv(r.final_state) - inv(r.initial_state)), 1e-7, "first integral drift");
  return c.report("Example 1 first integral y' - y^2");
}

int call(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

bool ac11() {
  Criterion c("AC11");
  const fs::path dir = fs::temp_directory_path() / "shoot_acceptance";
  fs::create_directories(dir);

  const fs::path csv = dir / "ex2.csv";
  c.check(call({"solve", "--problem", "ex2", "--out", csv.string()}) == cli::kOk, "solve ex2 --out");
  const auto ex2 = make_example("ex2");
  const auto r = solve_bvp(ex2.problem, ex2.default_guesses[0]);
  const auto rows = cli::read_trajectory_csv(csv);
  const auto& nodes = r.final_trajectory.nodes();
  bool same = rows.size() == nodes.size();
  for (std::size_t i = 0; same && i < rows.size(); ++i) {
    same = std::abs(rows[i].t - nodes[i].t) <= 1e-14 * std::max(1.0, std::abs(nodes[i].t));
    for (std::size_t j = 0; same && j < nodes[i].x.size(); ++j) {
      same = std::abs(rows[i].x[j] - nodes[i].x[j]) <= 1e-14 * std::max(1.0, std::abs(nodes[i].x[j]));
    }
  }
  c.check(same, "trajectory CSV round trip");

  struct Case {
    std::vector<std::string> args;
    int code;
  };
  const std::vector<Case> cases = {
      {{"list"}, cli::kOk},
      {{"solve", "--problem", "ex2", "--max-iter", "2"}, cli::kNotConverged},
      {{"solve", "--problem", "ex1", "--guess", "1,2"}, cli::kInvalidInput},
      {{"solve", "--problem", "ex1", "--guess", "10"}, cli::kIntegrationFailure},
      {{"solve", "--problem", "ex1", "--out", "/nonexistent/dir/x.csv"}, cli::kIoError},
  };
  for (const auto& cs : cases) {
    const int got = call(cs.args);
    c.check(got == cs.code, cs.args[0] + " " + cs.args.back() + " exited " + std::to_string(got) +
                                ", expected " + std::to_string(cs.code));
  }
  RhsFunction zero{2, [](double, const Vector&) { return Vector{0.0, 0.0}; }};
  const ExampleSpec singular{
      "toy", "singular", BvProblem(2, 0.0, 1.0, zero, {{0, 0.0}}, {{0, 1.0}}), {"x1", "x2"}, {{0.0}}, {}, false};
  cli::RunConfig cfg;
  cfg.problem = "toy";
  std::ostringstream sink;
  c.check(cli::cmd_solve(singular, cfg, sink, sink) == cli::kSingularJacobian, "singular Jacobian exit 4");

  std::string table;
  c.check(call({"solve", "--problem", "ex1", "--guess", "1", "--jacobian", "forward"}, &table) == cli::kOk,
          "solve ex1");
  std::ifstream in(fs::path(SHOOT_GOLDEN_DIR) / "solve_ex1.txt");
  std::stringstream golden;
  golden << in.rdbuf();
  c.check(in.good() || in.eof(), "golden file readable");
  c.check(table == golden.str(), "solve ex1 table differs from golden file");
  return c.report("CSV round trip, exit codes, golden table");
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<std::function<bool()>> criteria = {ac1, ac2, ac3, ac4, ac5, ac6,
                                                       ac7, ac8, ac9, ac10, ac11};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    try {
      if (!criteria[i]()) ++failed;
    } catch (const std::exception& e) {
      std::printf("AC%zu FAIL: unexpected exception: %s\n", i + 1, e.what());
      ++failed;
    }
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
