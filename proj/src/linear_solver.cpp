#include "barronhjb/linear_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "barronhjb/error.hpp"
#include "barronhjb/parallel.hpp"

namespace barronhjb {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool nonzero(const SpectralFunction& f) { return !f.is_zero() || !f.ledger().empty(); }

SpectralVector strip(std::span<const SpectralFunction> fs) {
  SpectralVector out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(f.without_ledger());
  return out;
}

double max_radius_of(std::span<const SpectralFunction> fs) {
  double r = 0.0;
  for (const auto& f : fs) r = std::max(r, f.max_radius());
  return r;
}

}  // namespace

double c_gamma(double gamma) { return 1.0 / (2.0 * (std::sqrt(1.0 + gamma) - 1.0)); }

std::vector<double> eval_points(const SpectralFunction& f, const PointSet& points) {
  if (points.dim != f.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "point set dimension does not match function");
  }
  const std::size_t n = points.size();
  std::vector<double> out(n);
  if (f.pair_count() == 0) {
    std::fill(out.begin(), out.end(), f.constant_term());
    return out;
  }
  parallel_for(n, 256, [&](std::size_t b, std::size_t e) {
    kernels::eval_batch(f.view(), points.coords.data() + b * points.dim, e - b, out.data() + b);
  });
  return out;
}

SpectralVector drift(const ValidatedProblem& vp, std::span<const SpectralFunction> u) {
  const std::size_t d = vp.spec.d, m = vp.spec.m;
  if (u.size() != m) throw Error(ErrorCode::kDimensionMismatch, "control has wrong size");
  SpectralVector mu;
  mu.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<SpectralFunction> parts{vp.spec.f[k]};
    for (std::size_t j = 0; j < m; ++j) {
      if (u[j].dim() != d) throw Error(ErrorCode::kDimensionMismatch, "control dimension");
      if (nonzero(u[j])) parts.push_back(multiply(vp.spec.g(k, j), u[j]));
    }
    mu.push_back(parts.size() == 1 ? parts[0] : sum(parts, d));
  }
  return mu;
}

SpectralFunction apply_T(std::span<const SpectralFunction> mu, const SpectralFunction& v,
                         double gamma) {
  const std::size_t d = v.dim();
  if (mu.size() != d) throw Error(ErrorCode::kDimensionMismatch, "drift has wrong size");
  std::vector<SpectralFunction> parts;
  for (std::size_t k = 0; k < d; ++k) {
    if (!nonzero(mu[k])) continue;
    const SpectralFunction dv = partial_derivative(v, k);
    if (!nonzero(dv)) continue;
    parts.push_back(multiply(mu[k], dv));
  }
  return resolvent(sum(parts, d), gamma);
}

LinearSolveResult solve_linearized(const ValidatedProblem& vp,
                                   std::span<const SpectralFunction> u_in,
                                   const SolverOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be positive");
  if (opts.max_terms < 1) throw Error(ErrorCode::kInvalidArgument, "max_terms must be >= 1");
  const double s = vp.spec.s, gamma = vp.spec.gamma;
  const std::size_t d = vp.spec.d;
  const SpectralVector u = strip(u_in);
  const SpectralVector mu = drift(vp, u);

  LinearSolveResult res;
  const double cg = c_gamma(gamma);
  res.contraction_q = cg * barron_norm(mu, s);
  const double q = res.contraction_q;
  const SpectralFunction src = add(vp.spec.ell.without_ledger(), control_cost(u, vp.spec.R));
  if (src.is_zero()) {
    // V = 0 solves the equation exactly whatever the drift.
    res.V = SpectralFunction(d);
    res.terms_used = 1;
    res.term_norms.push_back(0.0);
    return res;
  }
  if (!(q < 1.0)) {
    std::ostringstream os;
    os << "Neumann series does not contract: q = C_gamma ||f + g u||_{B^s} = " << q;
    throw Error(ErrorCode::kNotContractive, os.str());
  }

  const double u_norm = barron_norm(u, s);
  const double denom = 2.0 * (std::sqrt(1.0 + gamma) - 1.0) - vp.norm_f - vp.norm_g * u_norm;
  if (denom > 0.0) {
    res.norm_bound = (vp.norm_ell + vp.c_r1 * u_norm * u_norm) / denom + opts.tol;
  }

  const SpectralFunction w = prune(resolvent(src, gamma), opts.max_atoms, s + 1.0);
  res.w_norm = barron_norm(w, s + 1.0);

  // Smallest K with q^{K+1} ||w|| / (1 - q) < tol.
  std::size_t K = 0;
  if (res.w_norm > 0.0 && q > 0.0) {
    double tail = q * res.w_norm / (1.0 - q);
    while (!(tail < opts.tol)) {
      ++K;
      if (K + 1 > opts.max_terms) {
        std::ostringstream os;
        os << "Neumann series needs more than max_terms = " << opts.max_terms
           << " terms to reach tol = " << opts.tol << " (q = " << q << ")";
        throw Error(ErrorCode::kBudgetExceeded, os.str());
      }
      tail *= q;
    }
    res.tail_bound = tail;
  }

  std::vector<SpectralFunction> terms{w};
  res.term_norms.push_back(res.w_norm);
  for (std::size_t k = 1; k <= K; ++k) {
    SpectralFunction t = prune(apply_T(mu, terms.back(), gamma), opts.max_atoms, s + 1.0);
    res.term_norms.push_back(barron_norm(t, s + 1.0));
    const bool vanished = t.is_zero();
    terms.push_back(std::move(t));
    if (vanished) break;
  }
  res.terms_used = terms.size();
  SpectralFunction V = prune(sum(terms, d), opts.max_atoms, s + 1.0);
  res.prune_ledger = V.ledger_at(s + 1.0);
  if (!std::isfinite(res.prune_ledger)) res.prune_ledger = 0.0;
  // Record the total certified error in the ledger at every order <= s+1.
  Ledger ledger;
  const double total = res.prune_ledger + res.tail_bound;
  if (total > 0.0) {
    for (const auto& [order, v] : V.ledger()) {
      if (order <= s + 1.0) ledger[order] = v + res.tail_bound;
    }
    if (ledger.find(s + 1.0) == ledger.end()) ledger[s + 1.0] = total;
  }
  res.V = V.with_ledger(std::move(ledger));
  return res;
}

double pde_residual(const ValidatedProblem& vp, std::span<const SpectralFunction> u,
                    const SpectralFunction& V, const PointSet& points) {
  const std::size_t d = vp.spec.d, m = vp.spec.m, n = points.size();
  if (V.dim() != d || points.dim != d) {
    throw Error(ErrorCode::kDimensionMismatch, "pde_residual: dimension mismatch");
  }
  const SpectralVector mu = drift(vp, strip(u));
  std::vector<double> r = eval_points(V, points);
  for (double& v : r) v *= -vp.spec.gamma;
  const std::vector<double> lap = eval_points(laplacian(V), points);
  const std::vector<double> ell = eval_points(vp.spec.ell, points);
  for (std::size_t i = 0; i < n; ++i) r[i] += lap[i] + ell[i];
  for (std::size_t k = 0; k < d; ++k) {
    if (mu[k].is_zero()) continue;
    const std::vector<double> a = eval_points(mu[k], points);
    const std::vector<double> b = eval_points(partial_derivative(V, k), points);
    for (std::size_t i = 0; i < n; ++i) r[i] += a[i] * b[i];
  }
  std::vector<double> uval(n * m, 0.0);
  bool any_u = false;
  for (std::size_t j = 0; j < m; ++j) {
    if (u[j].is_zero()) continue;
    any_u = true;
    const std::vector<double> a = eval_points(u[j], points);
    for (std::size_t i = 0; i < n; ++i) uval[i * m + j] = a[i];
  }
  if (any_u) {
    for (std::size_t i = 0; i < n; ++i) r[i] += quadratic_form(vp.spec.R, &uval[i * m]);
  }
  double worst = 0.0;
  for (double v : r) worst = std::max(worst, std::abs(v));
  return worst;
}

double max_abs_coordinate(const PointSet& points) {
  double x = 0.0;
  for (double v : points.coords) x = std::max(x, std::abs(v));
  return x;
}

double evaluation_floor(double mass, double max_radius, double max_abs_coord, std::size_t dim) {
  const double phase = max_radius * max_abs_coord * std::sqrt(static_cast<double>(dim));
  return 64.0 * kEps * (1.0 + phase) * mass;
}

double residual_certificate(const ValidatedProblem& vp, std::span<const SpectralFunction> u,
                            const LinearSolveResult& result, double max_abs_coord) {
  const SpectralVector mu = drift(vp, strip(u));
  const double mu0 = barron_norm(mu, 0.0);
  const double gamma = vp.spec.gamma;
  const SpectralFunction& V = result.V;
  const double u0 = barron_norm(u, 0.0);
  const double mass = gamma * barron_norm(V, 0.0) + mu0 * barron_norm(V, 1.0) +
                      barron_norm(V, 2.0) + barron_norm(vp.spec.ell, 0.0) +
                      vp.c_r1 * u0 * u0 * static_cast<double>(vp.spec.m);
  const double radius = std::max({V.max_radius(), max_radius_of(mu), vp.spec.ell.max_radius(),
                                  max_radius_of(u)});
  return (gamma + 1.0 + mu0) * result.certificate() +
         evaluation_floor(mass, radius, max_abs_coord, vp.spec.d);
}

}  // namespace barronhjb
