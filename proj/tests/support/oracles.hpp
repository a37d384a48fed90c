#pragma once

// Reference computations that avoid the library's canonical storage: they
// work on plain atom lists and evaluate with std::complex exponentials.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "barronhjb/matrix.hpp"
#include "barronhjb/spectral_function.hpp"

namespace oracle {

using Complex = std::complex<double>;

struct Atom {
  std::vector<double> xi;
  Complex a;
};

// Full conjugate-symmetric list of f, rebuilt from the pair accessors.
inline std::vector<Atom> atoms_of(const barronhjb::SpectralFunction& f) {
  std::vector<Atom> out;
  if (f.has_constant()) out.push_back({std::vector<double>(f.dim(), 0.0), f.constant_term()});
  for (std::size_t p = 0; p < f.pair_count(); ++p) {
    std::vector<double> xi = f.pair_frequency(p);
    std::vector<double> neg = xi;
    for (double& v : neg) v = -v;
    out.push_back({xi, f.pair_amplitude(p)});
    out.push_back({neg, std::conj(f.pair_amplitude(p))});
  }
  return out;
}

inline double radius(const std::vector<double>& xi) {
  double r = 0.0;
  for (double v : xi) r += v * v;
  return std::sqrt(r);
}

// sum_j a_j exp(i xi_j . x), returned in full (imaginary part included).
inline Complex eval_complex(const std::vector<Atom>& atoms, const std::vector<double>& x) {
  Complex acc = 0.0;
  for (const auto& at : atoms) {
    double th = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) th += at.xi[k] * x[k];
    acc += at.a * std::exp(Complex(0.0, th));
  }
  return acc;
}

inline double eval(const barronhjb::SpectralFunction& f, const std::vector<double>& x) {
  return eval_complex(atoms_of(f), x).real();
}

inline double norm(const std::vector<Atom>& atoms, double s) {
  double n = 0.0;
  for (const auto& at : atoms) n += std::abs(at.a) * std::pow(1.0 + radius(at.xi), s);
  return n;
}

inline double norm(const barronhjb::SpectralFunction& f, double s) { return norm(atoms_of(f), s); }

// Central difference of f along axis at x.
inline double central_difference(const barronhjb::SpectralFunction& f, std::vector<double> x,
                                 std::size_t axis, double h) {
  const double x0 = x[axis];
  x[axis] = x0 + h;
  const double up = eval(f, x);
  x[axis] = x0 - h;
  const double dn = eval(f, x);
  return (up - dn) / (2.0 * h);
}

// (gamma - Laplacian)^{-1} f by dividing every atom amplitude by gamma + |xi|^2.
inline double resolvent_eval(const barronhjb::SpectralFunction& f, double gamma,
                             const std::vector<double>& x) {
  std::vector<Atom> atoms = atoms_of(f);
  for (auto& at : atoms) {
    const double r = radius(at.xi);
    at.a /= gamma + r * r;
  }
  return eval_complex(atoms, x).real();
}

// Determinant by cofactor expansion (small matrices only).
inline double determinant(const barronhjb::Matrix& a) {
  const std::size_t n = a.rows;
  if (n == 1) return a(0, 0);
  double det = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    barronhjb::Matrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t cc = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, cc++) = a(i, j);
      }
    }
    det += ((c % 2) ? -1.0 : 1.0) * a(0, c) * determinant(minor);
  }
  return det;
}

// Inverse by the adjugate formula.
inline barronhjb::Matrix adjugate_inverse(const barronhjb::Matrix& a) {
  const std::size_t n = a.rows;
  const double det = determinant(a);
  barronhjb::Matrix inv(n, n);
  if (n == 1) {
    inv(0, 0) = 1.0 / a(0, 0);
    return inv;
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      barronhjb::Matrix minor(n - 1, n - 1);
      std::size_t ii = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == r) continue;
        std::size_t jj = 0;
        for (std::size_t j = 0; j < n; ++j) {
          if (j == c) continue;
          minor(ii, jj++) = a(i, j);
        }
        ++ii;
      }
      inv(c, r) = (((r + c) % 2) ? -1.0 : 1.0) * determinant(minor) / det;
    }
  }
  return inv;
}

// Smaller root of (b + d) x^2 - c x + a = 0 by the textbook formula.
inline double smaller_root(double a, double b, double c, double d) {
  const double disc = c * c - 4.0 * a * (b + d);
  return (c - std::sqrt(std::max(disc, 0.0))) / (2.0 * (b + d));
}

// Periodic 1-D Galerkin solve of gamma V - V'' - mu V' = ell with integer
// frequencies |k| <= N. Coefficients are two-sided: value = sum_k c_k e^{ikx}.
// Dense complex Gaussian elimination with partial pivoting.
inline std::vector<Complex> galerkin_1d(double gamma, const std::vector<Complex>& mu_coef,
                                        int mu_band, const std::vector<Complex>& ell_coef,
                                        int ell_band, int N) {
  const int n = 2 * N + 1;
  std::vector<Complex> A(static_cast<std::size_t>(n * n), 0.0), b(static_cast<std::size_t>(n), 0.0);
  auto at = [&](int r, int c) -> Complex& { return A[static_cast<std::size_t>(r * n + c)]; };
  for (int k = -N; k <= N; ++k) {
    const int r = k + N;
    at(r, r) += gamma + static_cast<double>(k) * k;
    // (mu V')_k = sum_j mu_j * i (k - j) V_{k-j}
    for (int j = -mu_band; j <= mu_band; ++j) {
      const int col = k - j;
      if (col < -N || col > N) continue;
      at(r, col + N) -= mu_coef[static_cast<std::size_t>(j + mu_band)] * Complex(0.0, col);
    }
    if (k >= -ell_band && k <= ell_band) b[static_cast<std::size_t>(r)] = ell_coef[static_cast<std::size_t>(k + ell_band)];
  }
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r) {
      if (std::abs(at(r, c)) > std::abs(at(piv, c))) piv = r;
    }
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(at(c, j), at(piv, j));
      std::swap(b[static_cast<std::size_t>(c)], b[static_cast<std::size_t>(piv)]);
    }
    for (int r = c + 1; r < n; ++r) {
      const Complex f = at(r, c) / at(c, c);
      if (f == Complex(0.0)) continue;
      for (int j = c; j < n; ++j) at(r, j) -= f * at(c, j);
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(c)];
    }
  }
  std::vector<Complex> x(static_cast<std::size_t>(n));
  for (int r = n - 1; r >= 0; --r) {
    Complex acc = b[static_cast<std::size_t>(r)];
    for (int j = r + 1; j < n; ++j) acc -= at(r, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(r)] = acc / at(r, r);
  }
  return x;
}

inline double eval_two_sided(const std::vector<Complex>& coef, double x) {
  const int N = static_cast<int>(coef.size() / 2);
  Complex acc = 0.0;
  for (int k = -N; k <= N; ++k) acc += coef[static_cast<std::size_t>(k + N)] * std::exp(Complex(0.0, k * x));
  return acc.real();
}

}  // namespace oracle
