#include "barronhjb/problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "barronhjb/error.hpp"
#include "barronhjb/grid.hpp"

namespace barronhjb {

namespace {

void check_dim(const SpectralFunction& f, std::size_t d, const char* what) {
  if (f.dim() != d) {
    std::ostringstream os;
    os << what << " has dimension " << f.dim() << ", expected " << d;
    throw Error(ErrorCode::kDimensionMismatch, os.str());
  }
}

}  // namespace

double c_r1(const Matrix& R) {
  double best = -std::numeric_limits<double>::infinity();
  for (double v : R.data) best = std::max(best, v);
  return best;
}

double c_r2(const Matrix& R) {
  const Matrix inv = inverse_spd(R);
  double total = 0.0;
  for (std::size_t i = 0; i < inv.rows; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < inv.cols; ++j) row = std::max(row, std::abs(inv(i, j)));
    total += row;
  }
  return 0.5 * total;
}

ValidatedProblem validate(ProblemSpec spec, bool linear_only) {
  const std::size_t d = spec.d, m = spec.m;
  if (d == 0 || m == 0) throw Error(ErrorCode::kInvalidArgument, "d and m must be positive");
  if (spec.f.size() != d) throw Error(ErrorCode::kDimensionMismatch, "f must have d entries");
  if (spec.g.rows != d || spec.g.cols != m || spec.g.entries.size() != d * m) {
    throw Error(ErrorCode::kDimensionMismatch, "g must be a d x m matrix");
  }
  for (const auto& fk : spec.f) check_dim(fk, d, "f entry");
  for (const auto& gk : spec.g.entries) check_dim(gk, d, "g entry");
  check_dim(spec.ell, d, "ell");
  if (spec.R.rows != m || spec.R.cols != m) {
    throw Error(ErrorCode::kDimensionMismatch, "R must be m x m");
  }
  for (double v : spec.R.data) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "R has non-finite entries");
  }
  if (!(spec.gamma > 0.0) || !std::isfinite(spec.gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must be positive and finite");
  }
  if (!std::isfinite(spec.s)) throw Error(ErrorCode::kInvalidArgument, "s must be finite");
  const double min_order = linear_only ? 1.0 : 2.0;
  if (spec.s < min_order) {
    std::ostringstream os;
    os << "order s = " << spec.s << " is below the required minimum " << min_order;
    throw Error(ErrorCode::kOrderTooLow, os.str());
  }
  if (!is_symmetric(spec.R)) {
    throw Error(ErrorCode::kNotSymmetricPositiveDefinite, "R is not symmetric");
  }
  if (!leading_minors_positive(spec.R)) {
    const auto minors = leading_principal_minors(spec.R);
    std::size_t k = 0;
    while (k < minors.size() && minors[k] > 0.0) ++k;
    std::ostringstream os;
    os << "R is not positive definite: leading principal minor " << (k + 1) << " is "
       << (k < minors.size() ? minors[k] : 0.0);
    throw Error(ErrorCode::kNotSymmetricPositiveDefinite, os.str());
  }

  ValidatedProblem vp;
  vp.linear_only = linear_only;
  vp.norm_f = barron_norm(spec.f, spec.s);
  vp.norm_g = barron_norm(spec.g, spec.s);
  vp.norm_ell = barron_norm(spec.ell, spec.s);
  if (!(vp.norm_g > 0.0)) throw Error(ErrorCode::kZeroControlGain, "g is identically zero");
  vp.R_inv = inverse_spd(spec.R);
  vp.c_r1 = c_r1(spec.R);
  vp.c_r2 = c_r2(spec.R);

  if (!spec.ell.is_zero()) {
    const PointSet pts = default_grid(d, 3.141592653589793);
    std::vector<double> vals(pts.size());
    eval_many(spec.ell, pts.coords, vals);
    const auto it = std::min_element(vals.begin(), vals.end());
    if (it != vals.end() && *it < 0.0) {
      const std::size_t i = static_cast<std::size_t>(it - vals.begin());
      std::ostringstream os;
      os << "ell is negative at a test point (min " << *it << " at x = [";
      for (std::size_t k = 0; k < d; ++k) os << (k ? ", " : "") << pts.point(i)[k];
      os << "])";
      vp.warnings.push_back(os.str());
    }
  }
  vp.spec = std::move(spec);
  return vp;
}

DiscountReport discount_threshold(const ValidatedProblem& vp) {
  DiscountReport r;
  const double c1 = vp.c_r1, c2 = vp.c_r2;
  r.T = vp.norm_f + 2.0 * vp.norm_g * std::sqrt(vp.norm_ell) * std::sqrt(c1 * c2 * c2 + c2);
  r.lhs = 2.0 * (std::sqrt(1.0 + vp.spec.gamma) - 1.0);
  const double half = 1.0 + 0.5 * r.T;
  r.gamma_star = half * half - 1.0;
  r.gamma_ok = r.lhs >= r.T - 1e-14 * std::max(1.0, r.T);
  return r;
}

double h_value(const FixedPointReport& fp, double x) {
  return (fp.a + fp.b * x * x) / (fp.c - fp.d_coef * x);
}

double smaller_fixed_point(double a, double b, double c, double d) {
  if (a == 0.0) return 0.0;
  const double bd = b + d;
  double disc = c * c - 4.0 * a * bd;
  if (disc < 0.0) {
    // Round-off at a double root.
    if (disc >= -1e-12 * c * c) {
      disc = 0.0;
    } else {
      throw Error(ErrorCode::kDiscountTooSmall,
                  "no fixed point: discriminant of (b+d)x^2 - cx + a is negative");
    }
  }
  // 2a / (c + sqrt(disc)) is the smaller root without cancellation.
  return 2.0 * a / (c + std::sqrt(disc));
}

FixedPointReport fixed_point(const ValidatedProblem& vp) {
  const DiscountReport dr = discount_threshold(vp);
  FixedPointReport fp;
  fp.a = vp.c_r2 * vp.norm_g * vp.norm_ell;
  fp.b = vp.c_r1 * vp.c_r2 * vp.norm_g;
  fp.c = dr.lhs - vp.norm_f;
  fp.d_coef = vp.norm_g;
  fp.threshold = dr.T;
  fp.gamma_ok = dr.gamma_ok;
  if (!dr.gamma_ok) {
    std::ostringstream os;
    os << "discount gamma = " << vp.spec.gamma << " is below the threshold " << dr.gamma_star;
    throw Error(ErrorCode::kDiscountTooSmall, os.str());
  }
  fp.x0 = smaller_fixed_point(fp.a, fp.b, fp.c, fp.d_coef);
  fp.a0 = 1.0 / (vp.c_r2 * vp.norm_g);
  fp.V_bound = fp.a0 * h_value(fp, fp.x0);
  const double hx = h_value(fp, fp.x0);
  if (std::abs(hx - fp.x0) > 1e-10 * std::max(fp.x0, 1e-300) && std::abs(hx - fp.x0) > 1e-300) {
    std::ostringstream os;
    os << "fixed point check failed: h(x0) = " << hx << ", x0 = " << fp.x0;
    throw Error(ErrorCode::kDiscountTooSmall, os.str());
  }
  return fp;
}

SpectralFunction control_cost(std::span<const SpectralFunction> u, const Matrix& R) {
  const std::size_t m = u.size();
  if (R.rows != m || R.cols != m) {
    throw Error(ErrorCode::kDimensionMismatch, "control_cost: R does not match control size");
  }
  if (m == 0) throw Error(ErrorCode::kInvalidArgument, "control_cost: empty control");
  const std::size_t d = u[0].dim();
  std::vector<SpectralFunction> terms;
  for (std::size_t i = 0; i < m; ++i) {
    if (u[i].is_zero() && u[i].ledger().empty()) continue;
    for (std::size_t j = i; j < m; ++j) {
      const double w = (i == j) ? R(i, i) : 2.0 * R(i, j);
      if (w == 0.0 || (u[j].is_zero() && u[j].ledger().empty())) continue;
      terms.push_back(scale(multiply(u[i], u[j]), w));
    }
  }
  return sum(terms, d);
}

SpectralVector control_update(const ValidatedProblem& vp, const SpectralFunction& V) {
  const std::size_t d = vp.spec.d, m = vp.spec.m;
  SpectralVector grad;
  grad.reserve(d);
  for (std::size_t k = 0; k < d; ++k) grad.push_back(partial_derivative(V, k));
  // q_j = sum_k g_kj dV/dx_k
  SpectralVector q;
  q.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<SpectralFunction> parts;
    for (std::size_t k = 0; k < d; ++k) {
      if (grad[k].is_zero() && grad[k].ledger().empty()) continue;
      parts.push_back(multiply(vp.spec.g(k, j), grad[k]));
    }
    q.push_back(sum(parts, d));
  }
  SpectralVector u;
  u.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<SpectralFunction> parts;
    for (std::size_t j = 0; j < m; ++j) {
      const double w = -0.5 * vp.R_inv(i, j);
      if (w != 0.0) parts.push_back(scale(q[j], w));
    }
    u.push_back(sum(parts, d));
  }
  return u;
}

SpectralVector zero_control(const ValidatedProblem& vp) {
  return SpectralVector(vp.spec.m, SpectralFunction(vp.spec.d));
}

double quadratic_form(const Matrix& R, const double* u) {
  double v = 0.0;
  for (std::size_t i = 0; i < R.rows; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < R.cols; ++j) row += R(i, j) * u[j];
    v += u[i] * row;
  }
  return v;
}

}  // namespace barronhjb
