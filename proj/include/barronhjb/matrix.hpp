#pragma once

// Small dense row-major matrices for the control-cost weight R. Sizes are
// the control dimension, so everything here is direct and unblocked.

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace barronhjb {

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> init);

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

bool is_symmetric(const Matrix& a, double rel_tol = 1e-12);

/// Leading principal minors det(A[0..k,0..k]) for k = 1..n, computed by
/// elimination without pivoting (stops at the first non-positive minor;
/// remaining entries are left at 0).
std::vector<double> leading_principal_minors(const Matrix& a);

/// True when every leading principal minor is positive.
bool leading_minors_positive(const Matrix& a);

/// Lower Cholesky factor; throws kNotSymmetricPositiveDefinite on failure.
Matrix cholesky(const Matrix& a);

/// Inverse of a symmetric positive definite matrix via its Cholesky factor.
Matrix inverse_spd(const Matrix& a);

}  // namespace barronhjb
