#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "shoot/bvp.hpp"

namespace shoot {

/// p' = -f_x(t, x(t))^T p, with x(t) taken from the stored forward trajectory
/// by cubic Hermite interpolation.
RhsFunction adjoint_rhs(const BvProblem& p, const Trajectory& state);

/// delta' = f_x(t, x(t)) delta along the same stored trajectory.
RhsFunction linearized_rhs(const BvProblem& p, const Trajectory& state);

struct AdjointColumn {
  std::size_t terminal_index;  // j, with p^j(b) = e_j
  Vector p_at_start;           // p^j(a)
  Trajectory trajectory;       // backward, from b to a
};

struct AdjointBundle {
  std::vector<AdjointColumn> columns;
  /// Row r holds p^{j_r}(a)^T.
  Matrix assembled;
};

/// Integrates p^j backward from p^j(b) = e_j to t = a.
AdjointColumn integrate_adjoint(const BvProblem& p, const Trajectory& state,
                                std::size_t terminal_index, const IntegratorConfig& cfg = {});

/// Adjoint columns for the given terminal indices, assembled row-wise.
AdjointBundle adjoint_bundle(const BvProblem& p, const Trajectory& state,
                             std::span<const std::size_t> terminal_indices,
                             const IntegratorConfig& cfg = {});

struct AdjointJacobian {
  Vector residual;
  Matrix jacobian;
  Trajectory trajectory;
  AdjointBundle bundle;
};

/// F(c) and F'(c), with F'(c)[r][i] = p^{j_r}(a) at the i-th free coordinate.
AdjointJacobian adjoint_jacobian(const BvProblem& p, std::span<const double> c,
                                 const IntegratorConfig& cfg = {});

/// P(a)^T assembled from all n adjoint columns along the trajectory from x0.
Matrix adjoint_transition(const BvProblem& p, const Vector& x0, const IntegratorConfig& cfg = {});

/// max |P(a)^T - dx(b)/dx0| over all entries.
double theorem1_check(const BvProblem& p, const Vector& x0, const IntegratorConfig& cfg = {});

/// Linearized perturbation: delta(a) is zero on fixed coordinates and `free_delta`
/// on the free ones.
struct Perturbation {
  Vector delta0;
  Trajectory trajectory;
};

Perturbation linearized_perturbation(const BvProblem& p, const Trajectory& state,
                                     std::span<const double> free_delta,
                                     const IntegratorConfig& cfg = {});

/// max over `samples` equispaced times of |<p(t), d(t)> - <p(t0), d(t0)>|, where t0 is
/// the left end of the common span.
double bilinear_invariant(const Trajectory& p_traj, const Trajectory& d_traj, std::size_t samples);

struct CorrectionSystem {
  Matrix matrix;
  Vector rhs;

  /// Correction of the unknown initial values; throws Errc::SingularMatrix.
  Vector solve() const { return lu_solve(matrix, rhs); }
};

/// matrix[r][i] = p^{j_r}(a) at the i-th free coordinate; rhs[r] = y_T[r] - x_{j_r}(b).
CorrectionSystem correction_system(const AdjointBundle& bundle, const BvProblem& p,
                                   const Vector& x_end);

}  // namespace shoot
