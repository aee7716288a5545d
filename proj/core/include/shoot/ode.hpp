#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "shoot/linalg.hpp"

namespace shoot {

/// Right-hand side x' = f(t, x) of fixed dimension.
struct RhsFunction {
  std::size_t dimension = 0;
  std::function<Vector(double, const Vector&)> eval;

  Vector operator()(double t, const Vector& x) const { return eval(t, x); }
};

struct IntegratorConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  /// Magnitude of the first trial step; chosen automatically when empty.
  std::optional<double> initial_step;
  /// Smallest admissible step magnitude; defaults to 1e-14 * |t_end - t_start|.
  std::optional<double> min_step;
  std::size_t max_steps = 1'000'000;

  void validate() const;
};

struct TrajectoryNode {
  double t;
  Vector x;
  Vector dx;  // f(t, x)
};

/// Accepted steps of one IVP integration, in integration order. Immutable.
class Trajectory {
 public:
  Trajectory() = default;
  /// Validates monotone times and consistent dimensions.
  explicit Trajectory(std::vector<TrajectoryNode> nodes);

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t size() const noexcept { return nodes_.size(); }
  std::size_t dimension() const noexcept { return nodes_.empty() ? 0 : nodes_.front().x.size(); }
  /// +1 for forward integration, -1 for backward.
  int direction() const noexcept { return direction_; }

  const std::vector<TrajectoryNode>& nodes() const noexcept { return nodes_; }
  const TrajectoryNode& front() const { return nodes_.front(); }
  const TrajectoryNode& back() const { return nodes_.back(); }

  double t_start() const { return nodes_.front().t; }
  double t_end() const { return nodes_.back().t; }
  double t_min() const { return direction_ > 0 ? t_start() : t_end(); }
  double t_max() const { return direction_ > 0 ? t_end() : t_start(); }

  const Vector& initial_state() const { return nodes_.front().x; }
  const Vector& final_state() const { return nodes_.back().x; }

  /// Trajectory restricted to components [first, first + count).
  Trajectory slice(std::size_t first, std::size_t count) const;

 private:
  std::vector<TrajectoryNode> nodes_;
  int direction_ = 1;
};

/// Adaptive Dormand-Prince 5(4) integration from t_start to t_end (either order).
/// Throws Errc::StepSizeUnderflow, Errc::MaxStepsExceeded or Errc::NonFiniteState.
Trajectory integrate(const RhsFunction& rhs, double t_start, double t_end, const Vector& x0,
                     const IntegratorConfig& cfg = {});

/// Cubic Hermite interpolation between the bracketing nodes; exact at node times.
/// Throws Errc::TimeOutOfRange outside the trajectory's span.
Vector interpolate(const Trajectory& traj, double t);

}  // namespace shoot
