#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "barronhjb/matrix.hpp"
#include "barronhjb/spectral_function.hpp"

namespace barronhjb {

/// Discounted control problem
///   gamma V - Delta V - min_u { (f + g u) . grad V + ell + u^T R u } = 0 on R^d.
struct ProblemSpec {
  std::size_t d = 0;
  std::size_t m = 0;
  SpectralVector f;   // d entries
  SpectralMatrix g;   // d x m
  SpectralFunction ell;
  Matrix R;           // m x m, symmetric positive definite
  double gamma = 0.0;
  double s = 2.0;
};

struct ValidatedProblem {
  ProblemSpec spec;
  Matrix R_inv;
  double norm_f = 0.0;    // ||f||_{B^s}, summed over entries
  double norm_g = 0.0;    // ||g||_{B^s}
  double norm_ell = 0.0;  // ||ell||_{B^s}
  double c_r1 = 0.0;
  double c_r2 = 0.0;
  bool linear_only = false;
  std::vector<std::string> warnings;
};

/// Checks shapes, R symmetric positive definite, g nonzero and the order.
/// With linear_only the order may be as low as 1 (enough for a single
/// linearized solve).
ValidatedProblem validate(ProblemSpec spec, bool linear_only = false);

/// max_ij R_ij
double c_r1(const Matrix& R);
/// 1/2 sum_i max_j |(R^{-1})_ij|
double c_r2(const Matrix& R);

struct DiscountReport {
  double T = 0.0;           // ||f|| + 2||g|| ||ell||^{1/2} (C1 C2^2 + C2)^{1/2}
  double lhs = 0.0;         // 2(sqrt(1+gamma) - 1)
  double gamma_star = 0.0;  // smallest gamma with lhs >= T
  bool gamma_ok = false;
};

DiscountReport discount_threshold(const ValidatedProblem& vp);

struct FixedPointReport {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d_coef = 0.0;
  double threshold = 0.0;  // T of the discount condition
  bool gamma_ok = false;
  double x0 = 0.0;
  double a0 = 0.0;
  double V_bound = 0.0;  // a0 * h(x0)
};

/// h(x) = (a + b x^2) / (c - d x)
double h_value(const FixedPointReport& fp, double x);

/// Smaller root of (b+d) x^2 - c x + a = 0. Throws kDiscountTooSmall when the
/// discriminant is negative.
double smaller_fixed_point(double a, double b, double c, double d);

/// Throws kDiscountTooSmall unless the discount condition holds.
FixedPointReport fixed_point(const ValidatedProblem& vp);

/// sum_ij u_i R_ij u_j
SpectralFunction control_cost(std::span<const SpectralFunction> u, const Matrix& R);

/// u = -1/2 R^{-1} g^T grad V
SpectralVector control_update(const ValidatedProblem& vp, const SpectralFunction& V);

SpectralVector zero_control(const ValidatedProblem& vp);

/// Pointwise u(x)^T R u(x) from the component values.
double quadratic_form(const Matrix& R, const double* u);

}  // namespace barronhjb
