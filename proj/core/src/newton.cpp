#include "shoot/newton.hpp"

#include <cmath>

#include "shoot/adjoint.hpp"
#include "shoot/error.hpp"
#include "shoot/sensitivity.hpp"

namespace shoot {

std::string_view to_string(JacobianMode mode) noexcept {
  switch (mode) {
    case JacobianMode::Forward: return "forward";
    case JacobianMode::Adjoint: return "adjoint";
    case JacobianMode::FiniteDifference: return "fd";
  }
  return "unknown";
}

std::optional<JacobianMode> parse_jacobian_mode(std::string_view name) noexcept {
  if (name == "forward") return JacobianMode::Forward;
  if (name == "adjoint") return JacobianMode::Adjoint;
  if (name == "fd" || name == "finite_difference") return JacobianMode::FiniteDifference;
  return std::nullopt;
}

std::string_view to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::NotConverged: return "not converged";
    case SolveStatus::SingularJacobian: return "singular Jacobian";
    case SolveStatus::IntegrationFailure: return "integration failure";
  }
  return "unknown";
}

void SolveOptions::validate() const {
  if (!(tol_residual > 0.0) || !(tol_step > 0.0)) {
    throw Error(Errc::InvalidArgument, "Newton tolerances must be positive");
  }
  if (max_iter < 1) throw Error(Errc::InvalidArgument, "max_iter must be at least 1");
  if (step_clamp && !(*step_clamp > 0.0)) {
    throw Error(Errc::InvalidArgument, "step_clamp must be positive");
  }
  integrator.validate();
}

std::size_t SolveReport::newton_steps() const noexcept {
  // Every run ends with one record that carries no step.
  return iterations.empty() ? 0 : iterations.size() - 1;
}

Matrix fd_shooting_jacobian(const BvProblem& p, std::span<const double> c,
                            const IntegratorConfig& cfg) {
  const std::size_t k = p.free_count();
  if (c.size() != k) throw Error(Errc::DimensionMismatch, "fd_shooting_jacobian: length of c");
  Matrix jac(k, k);
  Vector cp(c.begin(), c.end());
  for (std::size_t i = 0; i < k; ++i) {
    const double h = 1e-6 * (1.0 + std::abs(c[i]));
    cp[i] = c[i] + h;
    const Vector fp = residual(p, cp, cfg).residual;
    cp[i] = c[i] - h;
    const Vector fm = residual(p, cp, cfg).residual;
    cp[i] = c[i];
    for (std::size_t r = 0; r < k; ++r) jac(r, i) = (fp[r] - fm[r]) / (2.0 * h);
  }
  return jac;
}

ShootingIterate evaluate_shooting(const BvProblem& p, std::span<const double> c, JacobianMode mode,
                                  const IntegratorConfig& cfg) {
  ShootingIterate it;
  it.c.assign(c.begin(), c.end());
  switch (mode) {
    case JacobianMode::Forward: {
      auto fwd = forward_jacobian(p, c, cfg);
      it.residual = std::move(fwd.residual);
      it.jacobian = std::move(fwd.jacobian);
      it.trajectory = std::move(fwd.trajectory);
      break;
    }
    case JacobianMode::Adjoint: {
      auto adj = adjoint_jacobian(p, c, cfg);
      it.residual = std::move(adj.residual);
      it.jacobian = std::move(adj.jacobian);
      it.trajectory = std::move(adj.trajectory);
      break;
    }
    case JacobianMode::FiniteDifference: {
      auto res = residual(p, c, cfg);
      it.residual = std::move(res.residual);
      it.trajectory = std::move(res.trajectory);
      it.jacobian = fd_shooting_jacobian(p, c, cfg);
      break;
    }
  }
  return it;
}

namespace {

void finish(SolveReport& report, const BvProblem& p, const Vector& c, Trajectory traj) {
  report.c_final = c;
  report.final_trajectory = std::move(traj);
  if (!report.final_trajectory.empty()) {
    report.initial_state = report.final_trajectory.initial_state();
    report.final_state = report.final_trajectory.final_state();
  } else {
    report.initial_state = embed_initial(p, c);
    report.final_state.clear();
  }
}

}  // namespace

SolveReport solve_bvp(const BvProblem& p, std::span<const double> c0, const SolveOptions& opts) {
  opts.validate();
  if (c0.size() != p.free_count()) {
    throw Error(Errc::DimensionMismatch, "initial guess has " + std::to_string(c0.size()) +
                                             " entries, problem has " +
                                             std::to_string(p.free_count()) + " unknowns");
  }
  if (!all_finite(c0)) throw Error(Errc::InvalidArgument, "initial guess must be finite");

  SolveReport report;
  Vector c(c0.begin(), c0.end());
  Trajectory last_traj;

  for (std::size_t k = 0;; ++k) {
    ShootingIterate it;
    try {
      // The Jacobian is not needed once the iteration budget is spent.
      if (k >= opts.max_iter) {
        auto res = residual(p, c, opts.integrator);
        it.c = c;
        it.residual = std::move(res.residual);
        it.trajectory = std::move(res.trajectory);
      } else {
        it = evaluate_shooting(p, c, opts.jacobian_mode, opts.integrator);
      }
    } catch (const Error& e) {
      if (!e.is_integration_failure()) throw;
      report.status = SolveStatus::IntegrationFailure;
      report.message = e.what();
      report.iterations.push_back({k, c, std::nan(""), 0.0});
      finish(report, p, c, std::move(last_traj));
      return report;
    }

    const double rnorm = inf_norm(it.residual);
    last_traj = std::move(it.trajectory);

    const bool residual_small = rnorm <= opts.tol_residual;
    const bool after_small_step =
        k > 0 && report.iterations.back().step_norm <=
                     opts.tol_step * (1.0 + inf_norm(report.iterations.back().c));
    if (residual_small || after_small_step || k >= opts.max_iter) {
      report.iterations.push_back({k, c, rnorm, 0.0});
      const bool tolerance_stop = residual_small || after_small_step;
      report.converged =
          tolerance_stop && std::isfinite(rnorm) && rnorm <= 10.0 * opts.tol_residual;
      report.status = report.converged ? SolveStatus::Converged : SolveStatus::NotConverged;
      if (!report.converged) {
        report.message = tolerance_stop ? "step tolerance reached with residual above tolerance"
                                        : "iteration limit reached";
      }
      finish(report, p, c, std::move(last_traj));
      return report;
    }

    Vector rhs = it.residual;
    for (double& v : rhs) v = -v;
    Vector dc;
    try {
      dc = lu_solve(it.jacobian, rhs);
    } catch (const Error& e) {
      if (e.code() != Errc::SingularMatrix && e.code() != Errc::InvalidArgument) throw;
      report.status = SolveStatus::SingularJacobian;
      report.message = e.what();
      report.iterations.push_back({k, c, rnorm, 0.0});
      finish(report, p, c, std::move(last_traj));
      return report;
    }
    if (opts.step_clamp) {
      const double s = inf_norm(dc);
      if (s > *opts.step_clamp) {
        for (double& v : dc) v *= *opts.step_clamp / s;
      }
    }
    const double snorm = inf_norm(dc);
    report.iterations.push_back({k, c, rnorm, snorm});
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += dc[i];
  }
}

}  // namespace shoot
