#include "barronhjb/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "barronhjb/error.hpp"

namespace barronhjb {

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> init) {
  rows = init.size();
  cols = rows ? init.begin()->size() : 0;
  data.reserve(rows * cols);
  for (const auto& row : init) {
    if (row.size() != cols) throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    data.insert(data.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

bool is_symmetric(const Matrix& a, double rel_tol) {
  if (a.rows != a.cols) return false;
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = i + 1; j < a.cols; ++j) {
      const double scale = std::max(std::abs(a(i, j)), std::abs(a(j, i)));
      if (std::abs(a(i, j) - a(j, i)) > rel_tol * scale) return false;
    }
  }
  return true;
}

std::vector<double> leading_principal_minors(const Matrix& a) {
  const std::size_t n = a.rows;
  std::vector<double> minors(n, 0.0);
  Matrix u = a;
  double det = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double pivot = u(k, k);
    det *= pivot;
    minors[k] = det;
    if (!(pivot > 0.0)) break;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = u(i, k) / pivot;
      for (std::size_t j = k; j < n; ++j) u(i, j) -= factor * u(k, j);
    }
  }
  return minors;
}

bool leading_minors_positive(const Matrix& a) {
  if (a.rows != a.cols || a.rows == 0) return false;
  for (double m : leading_principal_minors(a)) {
    if (!(m > 0.0)) return false;
  }
  return true;
}

Matrix cholesky(const Matrix& a) {
  const std::size_t n = a.rows;
  if (a.cols != n) throw Error(ErrorCode::kDimensionMismatch, "cholesky: matrix not square");
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0)) {
      throw Error(ErrorCode::kNotSymmetricPositiveDefinite, "matrix is not positive definite");
    }
    l(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
      l(i, j) = v / l(j, j);
    }
  }
  return l;
}

Matrix inverse_spd(const Matrix& a) {
  const std::size_t n = a.rows;
  const Matrix l = cholesky(a);
  Matrix inv(n, n);
  std::vector<double> y(n), x(n);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t i = 0; i < n; ++i) {
      double v = (i == col) ? 1.0 : 0.0;
      for (std::size_t k = 0; k < i; ++k) v -= l(i, k) * y[k];
      y[i] = v / l(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double v = y[ii];
      for (std::size_t k = ii + 1; k < n; ++k) v -= l(k, ii) * x[k];
      x[ii] = v / l(ii, ii);
    }
    for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
  }
  // Symmetrize away round-off.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (inv(i, j) + inv(j, i));
      inv(i, j) = v;
      inv(j, i) = v;
    }
  }
  return inv;
}

}  // namespace barronhjb
