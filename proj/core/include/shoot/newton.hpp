#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shoot/bvp.hpp"

namespace shoot {

enum class JacobianMode { Forward, Adjoint, FiniteDifference };

std::string_view to_string(JacobianMode mode) noexcept;
/// Accepts "forward", "adjoint", "fd" and "finite_difference".
std::optional<JacobianMode> parse_jacobian_mode(std::string_view name) noexcept;

struct SolveOptions {
  JacobianMode jacobian_mode = JacobianMode::Forward;
  double tol_residual = 1e-8;
  double tol_step = 1e-10;
  std::size_t max_iter = 25;
  /// Caps ||dc||_inf when set. Off by default: plain Newton.
  std::optional<double> step_clamp;
  IntegratorConfig integrator;

  void validate() const;
};

enum class SolveStatus { Converged, NotConverged, SingularJacobian, IntegrationFailure };

std::string_view to_string(SolveStatus status) noexcept;

struct IterationRecord {
  std::size_t k;
  Vector c;
  double residual_norm;  // ||F(c^k)||_inf
  double step_norm;      // ||c^{k+1} - c^k||_inf, 0 for the final record
};

struct SolveReport {
  SolveStatus status = SolveStatus::NotConverged;
  bool converged = false;
  Vector c_final;
  std::vector<IterationRecord> iterations;
  /// Trajectory at c_final; empty if the first integration already failed.
  Trajectory final_trajectory;
  Vector initial_state;  // x(a)
  Vector final_state;    // x(b)
  std::string message;

  /// Number of Newton updates applied.
  std::size_t newton_steps() const noexcept;
};

/// Newton iteration c^{k+1} = c^k + dc with F'(c^k) dc = -F(c^k).
/// Singular Jacobians and integration failures are reported through `status`,
/// not thrown; malformed input throws.
SolveReport solve_bvp(const BvProblem& p, std::span<const double> c0, const SolveOptions& opts = {});

/// Central differences of the shooting residual, h_i = 1e-6 * (1 + |c_i|).
Matrix fd_shooting_jacobian(const BvProblem& p, std::span<const double> c,
                            const IntegratorConfig& cfg = {});

/// F(c), F'(c) and the state trajectory by the chosen strategy.
struct ShootingIterate {
  Vector c;
  Vector residual;
  Matrix jacobian;
  Trajectory trajectory;
};

ShootingIterate evaluate_shooting(const BvProblem& p, std::span<const double> c, JacobianMode mode,
                                  const IntegratorConfig& cfg = {});

}  // namespace shoot
