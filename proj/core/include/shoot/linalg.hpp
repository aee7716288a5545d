#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace shoot {

using Vector = std::vector<double>;

/// Dense row-major matrix for the small systems that appear in shooting.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> data() const noexcept { return data_; }

  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Solves A x = b by LU factorization with partial pivoting.
/// Throws Errc::SingularMatrix when a pivot falls below 1e-14 * ||A||_inf.
Vector lu_solve(const Matrix& a, std::span<const double> b);

/// Canonical basis vector e_j of length n (0-based j).
Vector basis_vector(std::size_t j, std::size_t n);

/// Max absolute entry; 0 for an empty vector.
double inf_norm(std::span<const double> v) noexcept;

/// Induced infinity norm (max absolute row sum).
double inf_norm(const Matrix& a) noexcept;

/// Largest absolute entry.
double max_abs(const Matrix& a) noexcept;

/// Largest absolute entrywise difference; shapes must agree.
double max_abs_diff(const Matrix& a, const Matrix& b);

double dot(std::span<const double> a, std::span<const double> b);
Vector multiply(const Matrix& a, std::span<const double> x);
Matrix multiply(const Matrix& a, const Matrix& b);

bool all_finite(std::span<const double> v) noexcept;

}  // namespace shoot
