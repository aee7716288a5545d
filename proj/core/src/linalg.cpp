#include "shoot/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "shoot/error.hpp"

namespace shoot {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) {
    throw Error(Errc::DimensionMismatch, "matrix data has " + std::to_string(data_.size()) +
                                             " entries, expected " + std::to_string(rows * cols));
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Vector lu_solve(const Matrix& a, std::span<const double> b) {
  if (!a.square()) {
    throw Error(Errc::DimensionMismatch, "lu_solve needs a square matrix");
  }
  const std::size_t n = a.rows();
  if (b.size() != n) {
    throw Error(Errc::DimensionMismatch, "lu_solve: right-hand side has length " +
                                             std::to_string(b.size()) + ", expected " +
                                             std::to_string(n));
  }
  if (!all_finite(a.data()) || !all_finite(b)) {
    throw Error(Errc::InvalidArgument, "lu_solve: non-finite input");
  }

  const double threshold = 1e-14 * inf_norm(a);
  Matrix lu = a;
  Vector x(b.begin(), b.end());

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(lu(r, k)) > std::abs(lu(pivot, k))) pivot = r;
    }
    if (pivot != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(pivot).begin());
      std::swap(x[k], x[pivot]);
    }
    const double p = lu(k, k);
    if (std::abs(p) < threshold || p == 0.0) {
      throw Error(Errc::SingularMatrix, "pivot " + std::to_string(k) + " is " + std::to_string(p));
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double l = lu(r, k) / p;
      lu(r, k) = l;
      if (l == 0.0) continue;
      for (std::size_t c = k + 1; c < n; ++c) lu(r, c) -= l * lu(k, c);
      x[r] -= l * x[k];
    }
  }

  for (std::size_t k = n; k-- > 0;) {
    double s = x[k];
    for (std::size_t c = k + 1; c < n; ++c) s -= lu(k, c) * x[c];
    x[k] = s / lu(k, k);
  }
  return x;
}

Vector basis_vector(std::size_t j, std::size_t n) {
  if (j >= n) {
    throw Error(Errc::IndexOutOfRange,
                "basis index " + std::to_string(j) + " for dimension " + std::to_string(n));
  }
  Vector e(n, 0.0);
  e[j] = 1.0;
  return e;
}

double inf_norm(std::span<const double> v) noexcept {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double inf_norm(const Matrix& a) noexcept {
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    double s = 0.0;
    for (double x : a.row(r)) s += std::abs(x);
    m = std::max(m, s);
  }
  return m;
}

double max_abs(const Matrix& a) noexcept { return inf_norm(a.data()); }

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::DimensionMismatch, "max_abs_diff: shape mismatch");
  }
  double m = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) m = std::max(m, std::abs(da[i] - db[i]));
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "dot: length mismatch");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

Vector multiply(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(Errc::DimensionMismatch, "matrix-vector shape mismatch");
  Vector y(a.rows(), 0.0);
  for (std::size_t r = 0; r < a.rows(); ++r) y[r] = dot(a.row(r), x);
  return y;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(Errc::DimensionMismatch, "matrix-matrix shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double v = a(r, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(r, j) += v * b(k, j);
    }
  return c;
}

bool all_finite(std::span<const double> v) noexcept {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace shoot
