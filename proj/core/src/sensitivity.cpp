#include "shoot/sensitivity.hpp"

#include <string>

#include "shoot/error.hpp"

namespace shoot {

RhsFunction augmented_rhs(const BvProblem& p, std::size_t columns) {
  const std::size_t n = p.dimension();
  return RhsFunction{n + n * columns, [p, n, columns](double t, const Vector& y) {
                       const Vector x(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
                       Vector dy(y.size());
                       const Vector fx = p.rhs()(t, x);
                       if (fx.size() != n) {
                         throw Error(Errc::DimensionMismatch, "rhs returned wrong length");
                       }
                       std::copy(fx.begin(), fx.end(), dy.begin());
                       const Matrix jac = p.rhs_jacobian(t, x);
                       for (std::size_t col = 0; col < columns; ++col) {
                         const double* s = y.data() + n + col * n;
                         double* ds = dy.data() + n + col * n;
                         for (std::size_t r = 0; r < n; ++r) {
                           double acc = 0.0;
                           for (std::size_t k = 0; k < n; ++k) acc += jac(r, k) * s[k];
                           ds[r] = acc;
                         }
                       }
                       return dy;
                     }};
}

Vector augmented_initial_state(const Vector& x0, const Matrix& columns) {
  const std::size_t n = x0.size();
  if (columns.rows() != n) {
    throw Error(Errc::DimensionMismatch, "sensitivity columns must have length " +
                                             std::to_string(n));
  }
  Vector y(n + n * columns.cols());
  std::copy(x0.begin(), x0.end(), y.begin());
  for (std::size_t col = 0; col < columns.cols(); ++col)
    for (std::size_t r = 0; r < n; ++r) y[n + col * n + r] = columns(r, col);
  return y;
}

Matrix sensitivity_block(std::span<const double> augmented, std::size_t n) {
  if (n == 0 || augmented.size() < n || (augmented.size() - n) % n != 0) {
    throw Error(Errc::DimensionMismatch, "augmented state has unexpected length");
  }
  const std::size_t k = (augmented.size() - n) / n;
  Matrix s(n, k);
  for (std::size_t col = 0; col < k; ++col)
    for (std::size_t r = 0; r < n; ++r) s(r, col) = augmented[n + col * n + r];
  return s;
}

ForwardJacobian forward_jacobian(const BvProblem& p, std::span<const double> c,
                                 const IntegratorConfig& cfg) {
  if (!all_finite(c)) throw Error(Errc::InvalidArgument, "unknown initial values must be finite");
  const std::size_t n = p.dimension();
  const std::size_t k = p.free_count();
  const Selector& free = p.free_selector();
  const Selector& terminal = p.terminal_selector();

  // dx(a)/dc_i is the basis vector at the i-th free coordinate.
  Matrix seed(n, k);
  for (std::size_t i = 0; i < k; ++i) seed(free[i], i) = 1.0;

  const Vector x0 = embed_initial(p, c);
  const Trajectory aug = integrate(augmented_rhs(p, k), p.a(), p.b(),
                                   augmented_initial_state(x0, seed), cfg);

  ForwardJacobian out;
  out.sensitivity = sensitivity_block(aug.final_state(), n);
  out.jacobian = Matrix(k, k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t i = 0; i < k; ++i) out.jacobian(r, i) = out.sensitivity(terminal[r], i);
  out.trajectory = aug.slice(0, n);
  out.residual = select(terminal, out.trajectory.final_state());
  for (std::size_t r = 0; r < k; ++r) out.residual[r] -= p.terminal_values()[r];
  return out;
}

Matrix full_sensitivity(const BvProblem& p, const Vector& x0, const IntegratorConfig& cfg) {
  const std::size_t n = p.dimension();
  if (x0.size() != n) throw Error(Errc::DimensionMismatch, "full_sensitivity: state length");
  const Trajectory aug = integrate(augmented_rhs(p, n), p.a(), p.b(),
                                   augmented_initial_state(x0, Matrix::identity(n)), cfg);
  return sensitivity_block(aug.final_state(), n);
}

}  // namespace shoot
