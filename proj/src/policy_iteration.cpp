#include "barronhjb/policy_iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "barronhjb/error.hpp"

namespace barronhjb {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct ControlStep {
  SpectralVector u;
  double prune_mass = 0.0;  // total B^s mass removed across components
};

ControlStep next_control(const ValidatedProblem& vp, const SpectralFunction& V,
                         std::size_t max_atoms) {
  ControlStep step;
  for (auto& uj : control_update(vp, V.without_ledger())) {
    SpectralFunction p = prune(uj, max_atoms, vp.spec.s);
    const double mass = p.ledger_at(vp.spec.s);
    if (std::isfinite(mass)) step.prune_mass += mass;
    step.u.push_back(p.without_ledger());
  }
  return step;
}

}  // namespace

std::string_view stop_reason_name(StopReason r) noexcept {
  switch (r) {
    case StopReason::kResidualTol:
      return "ResidualTol";
    case StopReason::kIterCap:
      return "IterCap";
    case StopReason::kNotContractive:
      return "NotContractive";
  }
  return "Unknown";
}

double hjb_residual(const ValidatedProblem& vp, const SpectralFunction& V,
                    const PointSet& points) {
  const std::size_t d = vp.spec.d, m = vp.spec.m, n = points.size();
  if (V.dim() != d || points.dim != d) {
    throw Error(ErrorCode::kDimensionMismatch, "hjb_residual: dimension mismatch");
  }
  std::vector<double> r = eval_points(V, points);
  for (double& v : r) v *= -vp.spec.gamma;
  {
    const std::vector<double> lap = eval_points(laplacian(V), points);
    const std::vector<double> ell = eval_points(vp.spec.ell, points);
    for (std::size_t i = 0; i < n; ++i) r[i] += lap[i] + ell[i];
  }
  std::vector<double> p(n * m, 0.0);
  bool any_grad = false;
  for (std::size_t k = 0; k < d; ++k) {
    const SpectralFunction dV = partial_derivative(V, k);
    if (dV.is_zero()) continue;
    any_grad = true;
    const std::vector<double> gk = eval_points(dV, points);
    if (!vp.spec.f[k].is_zero()) {
      const std::vector<double> fk = eval_points(vp.spec.f[k], points);
      for (std::size_t i = 0; i < n; ++i) r[i] += gk[i] * fk[i];
    }
    for (std::size_t j = 0; j < m; ++j) {
      const SpectralFunction& gkj = vp.spec.g(k, j);
      if (gkj.is_zero()) continue;
      const std::vector<double> gv = eval_points(gkj, points);
      for (std::size_t i = 0; i < n; ++i) p[i * m + j] += gv[i] * gk[i];
    }
  }
  if (any_grad) {
    for (std::size_t i = 0; i < n; ++i) r[i] -= 0.25 * quadratic_form(vp.R_inv, &p[i * m]);
  }
  double worst = 0.0;
  for (double v : r) worst = std::max(worst, std::abs(v));
  return worst;
}

MonotonicityResult monotonicity_check(const SpectralFunction& V_prev,
                                      const SpectralFunction& V_next, const PointSet& points,
                                      double slack) {
  const std::vector<double> a = eval_points(V_prev, points);
  const std::vector<double> b = eval_points(V_next, points);
  MonotonicityResult res;
  res.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    res.worst_violation = std::max(res.worst_violation, b[i] - a[i]);
  }
  if (a.empty()) res.worst_violation = 0.0;
  res.ok = res.worst_violation <= slack;
  return res;
}

PolicyIterationReport run_policy_iteration(const ValidatedProblem& vp,
                                           std::span<const SpectralFunction> u0,
                                           const PolicyOptions& opts) {
  if (vp.linear_only) {
    throw Error(ErrorCode::kOrderTooLow, "policy iteration needs a problem validated for s >= 2");
  }
  if (opts.max_iter < 1) throw Error(ErrorCode::kInvalidArgument, "max_iter must be >= 1");
  if (u0.size() != vp.spec.m) {
    throw Error(ErrorCode::kDimensionMismatch, "initial control has wrong size");
  }
  const double s = vp.spec.s, gamma = vp.spec.gamma;
  PolicyIterationReport rep;
  rep.fixed_point = fixed_point(vp);
  const FixedPointReport& fp = rep.fixed_point;

  SpectralVector u;
  for (const auto& uj : u0) {
    if (uj.dim() != vp.spec.d) throw Error(ErrorCode::kDimensionMismatch, "control dimension");
    u.push_back(uj.without_ledger());
  }
  const double u0_norm = barron_norm(u, s);
  if (u0_norm > fp.x0 || (u0_norm == fp.x0 && fp.x0 > 0.0)) {
    std::ostringstream os;
    os << "initial control norm " << u0_norm << " is not below x0 = " << fp.x0;
    throw Error(ErrorCode::kInitialControlTooLarge, os.str());
  }

  const PointSet grid = opts.grid ? *opts.grid : default_grid(vp.spec.d, opts.grid_window);
  rep.grid_points = grid.size();
  const double X = max_abs_coordinate(grid);
  const double gain = vp.c_r2 * vp.norm_g;
  const double g0 = barron_norm(vp.spec.g, 0.0);

  double cert_sum = 0.0;
  double prev_cert = 0.0;
  double prev_prune = 0.0;  // B^s prune mass of the current control
  double prev_u_norm = 0.0;
  double prev_residual = 0.0;
  std::optional<SpectralFunction> V_prev;

  for (std::size_t i = 0; i < opts.max_iter; ++i) {
    LinearSolveResult sol;
    try {
      sol = solve_linearized(vp, u, opts.solver);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNotContractive) throw;
      rep.stop_reason = StopReason::kNotContractive;
      rep.detail = e.what();
      break;
    }
    IterationRecord rec;
    rec.i = i;
    rec.u_norm_s = barron_norm(u, s);
    rec.V_norm_s1 = barron_norm(sol.V, s + 1.0);
    rec.solve_cert = sol.certificate();
    rec.q = sol.contraction_q;
    rec.terms_used = sol.terms_used;
    cert_sum += rec.solve_cert;
    rec.slack = (1.0 + gain) * cert_sum + 64.0 * kEps * (1.0 + fp.x0 + fp.V_bound);

    rec.u_bound_ok = rec.u_norm_s <= fp.x0 + rec.slack;
    rec.V_bound_ok = rec.V_norm_s1 <= fp.V_bound + rec.slack;
    if (i > 0) {
      const bool in_domain = fp.c - fp.d_coef * prev_u_norm > 0.0;
      const double bound = in_domain ? h_value(fp, prev_u_norm) : 0.0;
      rec.recurrence_ok =
          in_domain && rec.u_norm_s <= bound + gain * prev_cert + 64.0 * kEps * (1.0 + bound);
    }

    rec.hjb_residual = hjb_residual(vp, sol.V, grid);
    if (V_prev) {
      // Deficit from using a control computed from an approximate, pruned V.
      const double du = vp.c_r2 * g0 * prev_cert + prev_prune;
      const double deficit = vp.c_r1 * static_cast<double>(vp.spec.m) * du * du / gamma;
      const double floor =
          evaluation_floor(barron_norm(sol.V, 0.0) + barron_norm(*V_prev, 0.0),
                           std::max(sol.V.max_radius(), V_prev->max_radius()), X, vp.spec.d);
      rec.monotone_slack = 2.0 * cert_sum + deficit + floor;
      const MonotonicityResult mono = monotonicity_check(*V_prev, sol.V, grid, rec.monotone_slack);
      rec.value_decrease_ok = mono.ok;
      rec.worst_violation = mono.worst_violation;
      const std::vector<double> a = eval_points(*V_prev, grid);
      const std::vector<double> b = eval_points(sol.V, grid);
      for (std::size_t k = 0; k < a.size(); ++k) {
        rec.successive_diff = std::max(rec.successive_diff, std::abs(a[k] - b[k]));
      }
      if (rec.hjb_residual > prev_residual + 2.0 * rec.slack) rep.residual_monotone = false;
    }
    rep.bounds_ok = rep.bounds_ok && rec.u_bound_ok && rec.V_bound_ok && rec.recurrence_ok;
    rep.monotone_ok = rep.monotone_ok && rec.value_decrease_ok;
    rep.iterations.push_back(rec);
    rep.V_final = sol.V;
    rep.u_last = u;
    prev_residual = rec.hjb_residual;
    prev_u_norm = rec.u_norm_s;
    prev_cert = rec.solve_cert;

    const bool settled = (i == 0) || rec.successive_diff <= opts.res_tol;
    if (rec.hjb_residual <= opts.res_tol && settled) {
      rep.converged = true;
      rep.stop_reason = StopReason::kResidualTol;
      break;
    }
    if (i + 1 == opts.max_iter) {
      rep.stop_reason = StopReason::kIterCap;
      break;
    }
    ControlStep step = next_control(vp, sol.V, opts.control_max_atoms);
    u = std::move(step.u);
    prev_prune = step.prune_mass;
    V_prev = std::move(sol.V);
  }

  if (rep.iterations.empty()) {
    rep.V_final = SpectralFunction(vp.spec.d);
    rep.u_final = u;
    rep.u_last = u;
    return rep;
  }
  rep.u_final = next_control(vp, rep.V_final, opts.control_max_atoms).u;
  const PointSet check = refined_grid(vp.spec.d, opts.grid_window);
  rep.final_check_points = check.size();
  rep.final_check_residual = hjb_residual(vp, rep.V_final, check);
  return rep;
}

}  // namespace barronhjb
