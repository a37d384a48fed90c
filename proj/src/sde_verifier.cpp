#include "barronhjb/sde_verifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "barronhjb/error.hpp"
#include "barronhjb/linear_solver.hpp"
#include "barronhjb/parallel.hpp"
#include "barronhjb/rng.hpp"

namespace barronhjb {

namespace {

constexpr std::size_t kBlockPairs = 32;

// Evaluates a function on a block of states, skipping the kernel for
// constants.
struct Evaluator {
  const SpectralFunction* f = nullptr;
  bool zero = true;
  bool constant = true;

  explicit Evaluator(const SpectralFunction& fn)
      : f(&fn), zero(fn.is_zero()), constant(fn.pair_count() == 0) {}

  void operator()(const double* xs, std::size_t n, double* out) const {
    if (constant) {
      std::fill(out, out + n, f->constant_term());
    } else {
      kernels::eval_batch(f->view(), xs, n, out);
    }
  }
};

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

}  // namespace

CostEstimate simulate_cost(const ValidatedProblem& vp, std::span<const SpectralFunction> u_in,
                           std::span<const double> x0, const SdeConfig& cfg) {
  const std::size_t d = vp.spec.d, m = vp.spec.m;
  if (x0.size() != d) throw Error(ErrorCode::kDimensionMismatch, "start point dimension");
  if (u_in.size() != m) throw Error(ErrorCode::kDimensionMismatch, "control has wrong size");
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
    throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  }
  if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) {
    throw Error(ErrorCode::kInvalidArgument, "horizon must be positive");
  }
  if (cfg.n_paths < 100) throw Error(ErrorCode::kInvalidArgument, "n_paths must be >= 100");

  SpectralVector u;
  for (const auto& uj : u_in) u.push_back(uj.without_ledger());
  const SpectralFunction ell = vp.spec.ell.without_ledger();
  const double gamma = vp.spec.gamma;

  CostEstimate est;
  est.steps = static_cast<std::size_t>(std::llround(cfg.horizon / cfg.dt));
  if (est.steps == 0) est.steps = 1;
  const double t_eff = static_cast<double>(est.steps) * cfg.dt;
  const double u0 = barron_norm(u, 0.0);
  const double sup_cost = barron_norm(ell, 0.0) + vp.c_r1 * u0 * u0;
  est.tail_bound = std::exp(-gamma * t_eff) * sup_cost / gamma;
  const double drift0 = barron_norm(vp.spec.f, 0.0) + barron_norm(vp.spec.g, 0.0) * u0;
  const double c_bias = cfg.c_bias ? *cfg.c_bias : 10.0 * (1.0 + drift0) * (1.0 + drift0);
  est.bias_allowance = c_bias * cfg.dt * sup_cost;

  const std::size_t per_unit = cfg.antithetic ? 2 : 1;
  const std::size_t units = (cfg.n_paths + per_unit - 1) / per_unit;
  bool all_zero_u = true;
  for (const auto& uj : u) all_zero_u = all_zero_u && uj.is_zero();
  if (ell.is_zero() && all_zero_u) {
    est.paths = units * per_unit;
    return est;
  }

  std::vector<Evaluator> f_ev, g_ev, u_ev;
  for (const auto& fk : vp.spec.f) f_ev.emplace_back(fk);
  for (const auto& gkj : vp.spec.g.entries) g_ev.emplace_back(gkj);
  for (const auto& uj : u) u_ev.emplace_back(uj);
  const Evaluator ell_ev(ell);
  const double sigma = std::sqrt(2.0 * cfg.dt);
  const double dt = cfg.dt;
  const double step_weight = -std::expm1(-gamma * dt) / gamma;

  std::vector<double> unit_value(units, 0.0);
  std::vector<unsigned char> unit_failed(units, 0);

  parallel_for(units, kBlockPairs, [&](std::size_t begin, std::size_t end) {
    const std::size_t nu = end - begin;
    const std::size_t ns = nu * per_unit;
    std::vector<double> xs(ns * d), cost(ns, 0.0), buf(ns), ell_v(ns), mu(ns * d);
    std::vector<double> uv(ns * m, 0.0), z(d), cache(nu, 0.0);
    std::vector<unsigned char> bad(ns, 0);
    for (std::size_t s = 0; s < ns; ++s) std::copy(x0.begin(), x0.end(), xs.begin() + s * d);
    std::vector<CounterRng> rngs;
    rngs.reserve(nu);
    for (std::size_t p = 0; p < nu; ++p) rngs.emplace_back(cfg.seed, begin + p);

    for (std::size_t step = 0; step < est.steps; ++step) {
      // Running cost frozen at the left point, discount integrated exactly.
      const double w = std::exp(-gamma * static_cast<double>(step) * dt) * step_weight;
      if (!ell_ev.zero) {
        ell_ev(xs.data(), ns, ell_v.data());
      } else {
        std::fill(ell_v.begin(), ell_v.end(), 0.0);
      }
      for (std::size_t j = 0; j < m; ++j) {
        if (u_ev[j].zero) continue;
        u_ev[j](xs.data(), ns, buf.data());
        for (std::size_t s = 0; s < ns; ++s) uv[s * m + j] = buf[s];
      }
      for (std::size_t s = 0; s < ns; ++s) {
        double c = ell_v[s];
        if (!all_zero_u) c += quadratic_form(vp.spec.R, &uv[s * m]);
        cost[s] += w * c;
      }
      // Drift f + g u.
      std::fill(mu.begin(), mu.end(), 0.0);
      for (std::size_t k = 0; k < d; ++k) {
        if (!f_ev[k].zero) {
          f_ev[k](xs.data(), ns, buf.data());
          for (std::size_t s = 0; s < ns; ++s) mu[s * d + k] += buf[s];
        }
        for (std::size_t j = 0; j < m; ++j) {
          const Evaluator& ge = g_ev[k * m + j];
          if (ge.zero || u_ev[j].zero) continue;
          ge(xs.data(), ns, buf.data());
          for (std::size_t s = 0; s < ns; ++s) mu[s * d + k] += buf[s] * uv[s * m + j];
        }
      }
      // Gaussian increments; normal number step*d+axis of each unit's stream.
      for (std::size_t p = 0; p < nu; ++p) {
        for (std::size_t k = 0; k < d; ++k) {
          const std::uint64_t j = static_cast<std::uint64_t>(step) * d + k;
          if ((j & 1) == 0) {
            double z1;
            rngs[p].normal_pair(j >> 1, z[k], z1);
            cache[p] = z1;
          } else {
            z[k] = cache[p];
          }
        }
        for (std::size_t a = 0; a < per_unit; ++a) {
          const std::size_t s = p * per_unit + a;
          const double sign = a == 0 ? 1.0 : -1.0;
          bool finite = true;
          for (std::size_t k = 0; k < d; ++k) {
            double& x = xs[s * d + k];
            x += mu[s * d + k] * dt + sign * sigma * z[k];
            finite = finite && std::isfinite(x);
          }
          if (!finite || !std::isfinite(cost[s])) {
            bad[s] = 1;
            // Park the state so later evaluations stay finite.
            std::fill(xs.begin() + s * d, xs.begin() + (s + 1) * d, 0.0);
          }
        }
      }
    }
    for (std::size_t p = 0; p < nu; ++p) {
      double v = 0.0;
      bool failed = false;
      for (std::size_t a = 0; a < per_unit; ++a) {
        const std::size_t s = p * per_unit + a;
        failed = failed || bad[s] || !std::isfinite(cost[s]);
        v += cost[s];
      }
      unit_failed[begin + p] = failed ? 1 : 0;
      unit_value[begin + p] = failed ? 0.0 : v / static_cast<double>(per_unit);
    }
  });

  std::vector<double> good;
  good.reserve(units);
  for (std::size_t i = 0; i < units; ++i) {
    if (unit_failed[i]) {
      est.failed_paths += per_unit;
    } else {
      good.push_back(unit_value[i]);
    }
  }
  if (static_cast<double>(est.failed_paths) > 0.01 * static_cast<double>(units * per_unit)) {
    std::ostringstream os;
    os << est.failed_paths << " of " << units * per_unit << " paths left the finite range";
    throw Error(ErrorCode::kSimulationFailure, os.str());
  }
  const std::size_t n = good.size();
  est.paths = n * per_unit;
  if (n == 0) return est;
  est.mean = pairwise_sum(good.data(), n) / static_cast<double>(n);
  if (n > 1) {
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = (good[i] - est.mean) * (good[i] - est.mean);
    const double var = pairwise_sum(sq.data(), n) / static_cast<double>(n - 1);
    est.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return est;
}

VerifyReport compare_value(const SpectralFunction& V, const PointSet& points,
                           const std::vector<CostEstimate>& estimates) {
  if (estimates.size() != points.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one estimate per point is required");
  }
  VerifyReport rep;
  for (std::size_t i = 0; i < points.size(); ++i) {
    PointCheck pc;
    pc.x.assign(points.point(i), points.point(i) + points.dim);
    pc.V_val = eval(V, pc.x);
    pc.mc = estimates[i];
    pc.tolerance = 3.0 * pc.mc.std_error + pc.mc.tail_bound + pc.mc.bias_allowance;
    pc.pass = std::abs(pc.V_val - pc.mc.mean) <= pc.tolerance;
    rep.all_pass = rep.all_pass && pc.pass;
    rep.per_point.push_back(std::move(pc));
  }
  return rep;
}

VerifyReport verify_value(const ValidatedProblem& vp, std::span<const SpectralFunction> u,
                          const SpectralFunction& V, const PointSet& points,
                          const SdeConfig& cfg) {
  if (points.dim != vp.spec.d) throw Error(ErrorCode::kDimensionMismatch, "point dimension");
  std::vector<CostEstimate> estimates;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::span<const double> x(points.point(i), points.dim);
    estimates.push_back(simulate_cost(vp, u, x, cfg));
  }
  return compare_value(V, points, estimates);
}

}  // namespace barronhjb
