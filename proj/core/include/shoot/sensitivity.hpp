#pragma once

#include <cstddef>
#include <span>

#include "shoot/bvp.hpp"

namespace shoot {

/// State plus `columns` variational columns: [x; s_1; ...; s_k] with
/// x' = f(t, x) and s_i' = f_x(t, x) s_i. Dimension n + n * columns.
RhsFunction augmented_rhs(const BvProblem& p, std::size_t columns);

/// Augmented system carrying one column per unknown initial value.
inline RhsFunction augmented_rhs(const BvProblem& p) { return augmented_rhs(p, p.free_count()); }

/// Initial augmented state: x0 followed by the given columns (each of length n).
Vector augmented_initial_state(const Vector& x0, const Matrix& columns);

/// Extracts the n x k sensitivity block from an augmented state.
Matrix sensitivity_block(std::span<const double> augmented, std::size_t n);

struct ForwardJacobian {
  Vector residual;        // F(c)
  Matrix jacobian;        // F'(c), rows: terminal indices, cols: free indices
  Matrix sensitivity;     // dx(b)/dc, n x (n - m)
  Trajectory trajectory;  // state components only
};

/// F(c) and F'(c) from a single augmented integration over [a, b].
ForwardJacobian forward_jacobian(const BvProblem& p, std::span<const double> c,
                                 const IntegratorConfig& cfg = {});

/// dx(b; x0)/dx0 by integrating S' = f_x S from S(a) = I.
Matrix full_sensitivity(const BvProblem& p, const Vector& x0, const IntegratorConfig& cfg = {});

}  // namespace shoot
