#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "shoot/linalg.hpp"
#include "shoot/ode.hpp"

namespace shoot {

using JacobianFunction = std::function<Matrix(double, const Vector&)>;

/// A boundary condition x_index(t) = value. Indices are 0-based.
struct BoundaryValue {
  std::size_t index;
  double value;
};

/// Ordered subset of state coordinates; plays the role of a 0/1 selector matrix
/// without ever materializing it.
class Selector {
 public:
  Selector() = default;
  /// `indices` must be strictly increasing and below `dimension`.
  Selector(std::vector<std::size_t> indices, std::size_t dimension);

  /// Coordinates of {0, ..., dimension-1} not in `s`, ascending.
  static Selector complement(const Selector& s);

  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t operator[](std::size_t k) const { return indices_[k]; }

  /// Writes values[k] into x[indices[k]].
  void scatter(std::span<const double> values, std::span<double> x) const;

 private:
  std::vector<std::size_t> indices_;
  std::size_t dimension_ = 0;
};

/// out[k] = x[indices[k]]. Throws Errc::IndexOutOfRange if an index exceeds x.
Vector select(const Selector& s, std::span<const double> x);

/// Two-point BVP x' = f(t, x) on [a, b] with separated explicit conditions:
/// x_i(a) fixed for i in the initial set, x_j(b) prescribed for j in the terminal set.
class BvProblem {
 public:
  /// Throws Errc::InvalidArgument when the index sets are malformed, when
  /// |terminal| != n - |initial|, when no initial value is free, or when a >= b.
  BvProblem(std::size_t n, double a, double b, RhsFunction rhs,
            std::vector<BoundaryValue> fixed_initial, std::vector<BoundaryValue> target_terminal,
            JacobianFunction rhs_jacobian = {});

  std::size_t dimension() const noexcept { return n_; }
  /// Number of fixed initial values.
  std::size_t fixed_count() const noexcept { return initial_.size(); }
  /// Number of unknown initial values (n - m).
  std::size_t free_count() const noexcept { return free_.size(); }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  const RhsFunction& rhs() const noexcept { return rhs_; }
  bool has_analytic_jacobian() const noexcept { return static_cast<bool>(jacobian_); }

  /// df/dx at (t, x): the supplied Jacobian, or central differences when absent.
  Matrix rhs_jacobian(double t, const Vector& x) const;

  const Selector& initial_selector() const noexcept { return initial_; }
  const Selector& free_selector() const noexcept { return free_; }
  const Selector& terminal_selector() const noexcept { return terminal_; }
  const Vector& initial_values() const noexcept { return y0_; }
  const Vector& terminal_values() const noexcept { return yT_; }

 private:
  std::size_t n_;
  double a_;
  double b_;
  RhsFunction rhs_;
  JacobianFunction jacobian_;
  Selector initial_;
  Selector free_;
  Selector terminal_;
  Vector y0_;
  Vector yT_;
};

/// x0(c): fixed initial values scattered with c placed on the free coordinates.
Vector embed_initial(const BvProblem& p, std::span<const double> c);

struct ResidualResult {
  Vector residual;  // F(c) = x(b)|terminal - y_T
  Trajectory trajectory;
};

ResidualResult residual(const BvProblem& p, std::span<const double> c,
                        const IntegratorConfig& cfg = {});

/// Central-difference df/dx with h_i = sqrt(eps) * (1 + |x_i|).
Matrix fd_rhs_jacobian(const BvProblem& p, double t, const Vector& x);

}  // namespace shoot
