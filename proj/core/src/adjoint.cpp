#include "shoot/adjoint.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "shoot/error.hpp"
#include "shoot/sensitivity.hpp"

namespace shoot {

namespace {

void require_span(const BvProblem& p, const Trajectory& state) {
  if (state.empty() || state.dimension() != p.dimension()) {
    throw Error(Errc::DimensionMismatch, "state trajectory does not match the problem");
  }
  const double tol = 1e-12 * (p.b() - p.a());
  if (state.t_min() > p.a() + tol || state.t_max() < p.b() - tol) {
    throw Error(Errc::TimeOutOfRange, "state trajectory does not span [a, b]");
  }
}

}  // namespace

RhsFunction adjoint_rhs(const BvProblem& p, const Trajectory& state) {
  require_span(p, state);
  auto traj = std::make_shared<const Trajectory>(state);
  const std::size_t n = p.dimension();
  return RhsFunction{n, [p, traj, n](double t, const Vector& adj) {
                       const Matrix jac = p.rhs_jacobian(t, interpolate(*traj, t));
                       Vector out(n, 0.0);
                       // -J^T p
                       for (std::size_t k = 0; k < n; ++k) {
                         const double pk = adj[k];
                         if (pk == 0.0) continue;
                         for (std::size_t i = 0; i < n; ++i) out[i] -= jac(k, i) * pk;
                       }
                       return out;
                     }};
}

RhsFunction linearized_rhs(const BvProblem& p, const Trajectory& state) {
  require_span(p, state);
  auto traj = std::make_shared<const Trajectory>(state);
  return RhsFunction{p.dimension(), [p, traj](double t, const Vector& d) {
                       return multiply(p.rhs_jacobian(t, interpolate(*traj, t)), d);
                     }};
}

AdjointColumn integrate_adjoint(const BvProblem& p, const Trajectory& state,
                                std::size_t terminal_index, const IntegratorConfig& cfg) {
  AdjointColumn col;
  col.terminal_index = terminal_index;
  col.trajectory = integrate(adjoint_rhs(p, state), p.b(), p.a(),
                             basis_vector(terminal_index, p.dimension()), cfg);
  col.p_at_start = col.trajectory.final_state();
  return col;
}

AdjointBundle adjoint_bundle(const BvProblem& p, const Trajectory& state,
                             std::span<const std::size_t> terminal_indices,
                             const IntegratorConfig& cfg) {
  AdjointBundle bundle;
  bundle.assembled = Matrix(terminal_indices.size(), p.dimension());
  bundle.columns.reserve(terminal_indices.size());
  for (std::size_t r = 0; r < terminal_indices.size(); ++r) {
    bundle.columns.push_back(integrate_adjoint(p, state, terminal_indices[r], cfg));
    const Vector& pa = bundle.columns.back().p_at_start;
    std::copy(pa.begin(), pa.end(), bundle.assembled.row(r).begin());
  }
  return bundle;
}

AdjointJacobian adjoint_jacobian(const BvProblem& p, std::span<const double> c,
                                 const IntegratorConfig& cfg) {
  ResidualResult fwd = residual(p, c, cfg);
  AdjointJacobian out;
  out.residual = std::move(fwd.residual);
  out.trajectory = std::move(fwd.trajectory);
  out.bundle = adjoint_bundle(p, out.trajectory, p.terminal_selector().indices(), cfg);

  const std::size_t k = p.free_count();
  const Selector& free = p.free_selector();
  out.jacobian = Matrix(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t i = 0; i < k; ++i) out.jacobian(r, i) = out.bundle.assembled(r, free[i]);
  return out;
}

Matrix adjoint_transition(const BvProblem& p, const Vector& x0, const IntegratorConfig& cfg) {
  const Trajectory state = integrate(p.rhs(), p.a(), p.b(), x0, cfg);
  std::vector<std::size_t> all(p.dimension());
  for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
  return adjoint_bundle(p, state, all, cfg).assembled;
}

double theorem1_check(const BvProblem& p, const Vector& x0, const IntegratorConfig& cfg) {
  return max_abs_diff(adjoint_transition(p, x0, cfg), full_sensitivity(p, x0, cfg));
}

Perturbation linearized_perturbation(const BvProblem& p, const Trajectory& state,
                                     std::span<const double> free_delta,
                                     const IntegratorConfig& cfg) {
  if (free_delta.size() != p.free_count()) {
    throw Error(Errc::DimensionMismatch, "perturbation needs " + std::to_string(p.free_count()) +
                                             " free components");
  }
  Perturbation out;
  out.delta0.assign(p.dimension(), 0.0);
  p.free_selector().scatter(free_delta, out.delta0);
  out.trajectory = integrate(linearized_rhs(p, state), p.a(), p.b(), out.delta0, cfg);
  return out;
}

double bilinear_invariant(const Trajectory& p_traj, const Trajectory& d_traj,
                          std::size_t samples) {
  if (p_traj.empty() || d_traj.empty()) {
    throw Error(Errc::TimeOutOfRange, "bilinear_invariant: empty trajectory");
  }
  if (p_traj.dimension() != d_traj.dimension()) {
    throw Error(Errc::DimensionMismatch, "bilinear_invariant: dimension mismatch");
  }
  const double lo = std::max(p_traj.t_min(), d_traj.t_min());
  const double hi = std::min(p_traj.t_max(), d_traj.t_max());
  if (!(lo < hi)) throw Error(Errc::TimeOutOfRange, "bilinear_invariant: spans do not overlap");
  if (samples < 2) samples = 2;

  const double ref = dot(interpolate(p_traj, lo), interpolate(d_traj, lo));
  double drift = 0.0;
  for (std::size_t s = 1; s < samples; ++s) {
    const double t =
        s + 1 == samples ? hi : lo + (hi - lo) * static_cast<double>(s) / (samples - 1);
    drift = std::max(drift, std::abs(dot(interpolate(p_traj, t), interpolate(d_traj, t)) - ref));
  }
  return drift;
}

CorrectionSystem correction_system(const AdjointBundle& bundle, const BvProblem& p,
                                   const Vector& x_end) {
  const Selector& terminal = p.terminal_selector();
  const Selector& free = p.free_selector();
  const std::size_t k = p.free_count();
  if (x_end.size() != p.dimension()) {
    throw Error(Errc::DimensionMismatch, "terminal state has wrong length");
  }
  CorrectionSystem sys{Matrix(k, k), Vector(k)};
  for (std::size_t r = 0; r < k; ++r) {
    const auto it = std::find_if(bundle.columns.begin(), bundle.columns.end(),
                                 [&](const AdjointColumn& c) { return c.terminal_index == terminal[r]; });
    if (it == bundle.columns.end()) {
      throw Error(Errc::InvalidArgument, "adjoint bundle lacks terminal index " +
                                             std::to_string(terminal[r]));
    }
    for (std::size_t i = 0; i < k; ++i) sys.matrix(r, i) = it->p_at_start[free[i]];
    sys.rhs[r] = p.terminal_values()[r] - x_end[terminal[r]];
  }
  return sys;
}

}  // namespace shoot
