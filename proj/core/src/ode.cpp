#include "shoot/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "shoot/error.hpp"

namespace shoot {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr std::array<double, 7> kC = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// Difference between the 5th- and 4th-order weights.
constexpr std::array<double, 7> kE = {71.0 / 57600,     0.0,          -71.0 / 16695, 71.0 / 1920,
                                      -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

constexpr double kSafety = 0.9;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

Vector checked_eval(const RhsFunction& rhs, double t, const Vector& x) {
  Vector dx = rhs(t, x);
  if (dx.size() != x.size()) {
    throw Error(Errc::DimensionMismatch, "rhs returned " + std::to_string(dx.size()) +
                                             " components, expected " + std::to_string(x.size()));
  }
  if (!all_finite(dx)) {
    throw Error(Errc::NonFiniteState, "rhs is not finite at t = " + num(t));
  }
  return dx;
}

double initial_step(const Vector& x0, const Vector& dx0, double span) {
  double h = span / 100.0;
  const double d1 = inf_norm(dx0);
  if (d1 > 0.0) h = std::min(h, 0.01 * std::max(1.0, inf_norm(x0)) / d1);
  return h;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rtol > 0.0) || !(atol > 0.0)) {
    throw Error(Errc::InvalidArgument, "integrator tolerances must be positive");
  }
  if (max_steps < 1) throw Error(Errc::InvalidArgument, "max_steps must be at least 1");
  if (initial_step && !(*initial_step > 0.0)) {
    throw Error(Errc::InvalidArgument, "initial_step must be positive");
  }
  if (min_step && !(*min_step > 0.0)) {
    throw Error(Errc::InvalidArgument, "min_step must be positive");
  }
}

Trajectory::Trajectory(std::vector<TrajectoryNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) return;
  direction_ = (nodes_.size() > 1 && nodes_[1].t < nodes_[0].t) ? -1 : 1;
  const std::size_t n = nodes_.front().x.size();
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].x.size() != n || nodes_[i].dx.size() != n) {
      throw Error(Errc::DimensionMismatch, "trajectory node " + std::to_string(i) +
                                               " has inconsistent dimension");
    }
    if (i > 0 && !((nodes_[i].t - nodes_[i - 1].t) * direction_ > 0.0)) {
      throw Error(Errc::InvalidArgument, "trajectory times are not strictly monotone");
    }
  }
}

Trajectory Trajectory::slice(std::size_t first, std::size_t count) const {
  if (first + count > dimension()) {
    throw Error(Errc::IndexOutOfRange, "trajectory slice exceeds dimension");
  }
  std::vector<TrajectoryNode> out;
  out.reserve(nodes_.size());
  const auto b = static_cast<std::ptrdiff_t>(first);
  const auto e = static_cast<std::ptrdiff_t>(first + count);
  for (const auto& node : nodes_) {
    out.push_back({node.t, Vector(node.x.begin() + b, node.x.begin() + e),
                   Vector(node.dx.begin() + b, node.dx.begin() + e)});
  }
  Trajectory t;
  t.nodes_ = std::move(out);
  t.direction_ = direction_;
  return t;
}

Trajectory integrate(const RhsFunction& rhs, double t_start, double t_end, const Vector& x0,
                     const IntegratorConfig& cfg) {
  cfg.validate();
  if (x0.size() != rhs.dimension) {
    throw Error(Errc::DimensionMismatch, "initial state has " + std::to_string(x0.size()) +
                                             " components, rhs expects " +
                                             std::to_string(rhs.dimension));
  }
  if (!all_finite(x0)) throw Error(Errc::NonFiniteState, "initial state is not finite");
  if (!(t_start != t_end) || !std::isfinite(t_start) || !std::isfinite(t_end)) {
    throw Error(Errc::InvalidArgument, "integration interval is empty or not finite");
  }

  const double dir = t_end > t_start ? 1.0 : -1.0;
  const double span = std::abs(t_end - t_start);
  const double min_step = cfg.min_step.value_or(1e-14 * span);
  const std::size_t n = x0.size();

  std::vector<TrajectoryNode> nodes;
  nodes.push_back({t_start, x0, checked_eval(rhs, t_start, x0)});

  double h = cfg.initial_step.value_or(initial_step(x0, nodes.back().dx, span));
  h = std::min(h, span);

  std::array<Vector, 7> k;
  Vector stage(n), x_new(n);
  bool rejected_last = false;

  for (std::size_t attempts = 0;; ++attempts) {
    if (attempts >= cfg.max_steps) {
      throw Error(Errc::MaxStepsExceeded, "exceeded " + std::to_string(cfg.max_steps) +
                                              " steps at t = " + num(nodes.back().t));
    }
    const TrajectoryNode& cur = nodes.back();
    const double remaining = std::abs(t_end - cur.t);
    bool last = false;
    if (h >= remaining) {
      h = remaining;
      last = true;
    } else if (h < min_step) {
      throw Error(Errc::StepSizeUnderflow,
                  "step " + num(h) + " below minimum at t = " + num(cur.t));
    }
    const double hs = dir * h;

    k[0] = cur.dx;
    for (std::size_t s = 1; s < 7; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < s; ++j) acc += kA[s][j] * k[j][i];
        stage[i] = cur.x[i] + hs * acc;
      }
      if (!all_finite(stage)) {
        throw Error(Errc::NonFiniteState, "state is not finite near t = " + num(cur.t));
      }
      const double ts = (s >= 5 && last) ? t_end : cur.t + kC[s] * hs;
      k[s] = checked_eval(rhs, ts, stage);
      if (s == 6) x_new = stage;  // row 7 of A holds the 5th-order weights (FSAL)
    }

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double e = 0.0;
      for (std::size_t j = 0; j < 7; ++j) e += kE[j] * k[j][i];
      e *= hs;
      const double scale = cfg.atol + cfg.rtol * std::max(std::abs(cur.x[i]), std::abs(x_new[i]));
      err = std::max(err, std::abs(e) / scale);
    }
    if (!std::isfinite(err)) {
      throw Error(Errc::NonFiniteState, "error estimate is not finite near t = " +
                                            num(cur.t));
    }

    double factor = err == 0.0 ? kMaxFactor : kSafety * std::pow(err, -0.2);
    factor = std::clamp(factor, kMinFactor, kMaxFactor);

    if (err <= 1.0) {
      const double t_new = last ? t_end : cur.t + hs;
      nodes.push_back({t_new, x_new, k[6]});
      if (last) break;
      if (rejected_last) factor = std::min(factor, 1.0);
      rejected_last = false;
      h *= factor;
    } else {
      rejected_last = true;
      h *= std::min(factor, 1.0);
    }
  }
  return Trajectory(std::move(nodes));
}

Vector interpolate(const Trajectory& traj, double t) {
  if (traj.empty()) throw Error(Errc::TimeOutOfRange, "empty trajectory");
  const auto& nodes = traj.nodes();
  const double lo = traj.t_min();
  const double hi = traj.t_max();
  const double slack = 1e-12 * std::max(hi - lo, 1.0);
  if (!(t >= lo - slack && t <= hi + slack)) {
    throw Error(Errc::TimeOutOfRange, "t = " + num(t) + " outside [" +
                                          num(lo) + ", " + num(hi) + "]");
  }
  if (nodes.size() == 1) return nodes.front().x;

  // Index of the first node at or past t in integration order.
  const int dir = traj.direction();
  auto it = std::lower_bound(nodes.begin(), nodes.end(), t,
                             [dir](const TrajectoryNode& node, double value) {
                               return dir > 0 ? node.t < value : node.t > value;
                             });
  if (it == nodes.end()) return nodes.back().x;
  if (it->t == t) return it->x;
  if (it == nodes.begin()) return nodes.front().x;

  const TrajectoryNode& n0 = *(it - 1);
  const TrajectoryNode& n1 = *it;
  const double h = n1.t - n0.t;
  const double s = (t - n0.t) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;

  Vector x(n0.x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = h00 * n0.x[i] + h10 * h * n0.dx[i] + h01 * n1.x[i] + h11 * h * n1.dx[i];
  }
  return x;
}

}  // namespace shoot
