#include "barronhjb/nn_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "barronhjb/error.hpp"
#include "barronhjb/grid.hpp"
#include "barronhjb/linear_solver.hpp"
#include "barronhjb/parallel.hpp"
#include "barronhjb/rng.hpp"

namespace barronhjb {

namespace {

void check_order(int k) {
  if (k < 0 || k > 2) {
    throw Error(ErrorCode::kUnsupportedOrder,
                "order k = " + std::to_string(k) + " is not supported (use 0, 1 or 2)");
  }
}

PointSet midpoint_grid(const Box& box, std::size_t per_axis) {
  const std::size_t d = box.dim();
  std::size_t total = 1;
  for (std::size_t k = 0; k < d; ++k) total *= per_axis;
  PointSet ps{d, std::vector<double>(total * d)};
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    for (std::size_t k = 0; k < d; ++k) {
      const std::size_t j = rem % per_axis;
      rem /= per_axis;
      const double h = (box.hi[k] - box.lo[k]) / static_cast<double>(per_axis);
      ps.coords[i * d + k] = box.lo[k] + h * (static_cast<double>(j) + 0.5);
    }
  }
  return ps;
}

}  // namespace

Box Box::symmetric(std::size_t dim, double half_width) {
  return Box{std::vector<double>(dim, -half_width), std::vector<double>(dim, half_width)};
}

double Box::volume() const {
  double v = 1.0;
  for (std::size_t k = 0; k < lo.size(); ++k) v *= hi[k] - lo[k];
  return v;
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t trial) {
  return CounterRng(seed, n).bits(trial);
}

CosineNetwork sample_network(const SpectralFunction& f, int k, std::size_t n, std::uint64_t seed) {
  check_order(k);
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "n must be at least 1");
  if (f.is_zero()) {
    throw Error(ErrorCode::kZeroFunction, "cannot sample a network from the zero function");
  }
  const std::size_t np = f.pair_count();
  const bool has_zero = f.has_constant();
  // Category c < np is pair c; c == np is the zero-frequency atom.
  std::vector<std::size_t> cats;
  std::vector<double> cumulative;
  double total = 0.0;
  if (has_zero) {
    cats.push_back(np);
    total += std::abs(f.constant_term());
    cumulative.push_back(total);
  }
  for (std::size_t p = 0; p < np; ++p) {
    cats.push_back(p);
    total += 2.0 * std::abs(f.pair_amplitude(p)) * std::pow(1.0 + f.pair_radius(p), k);
    cumulative.push_back(total);
  }
  const double norm = barron_norm(f, k);

  CosineNetwork net;
  net.dim = f.dim();
  net.n = n;
  net.k = k;
  net.source_norm = norm;
  net.neurons.reserve(n);
  const CounterRng rng(seed, 0);
  for (std::size_t l = 0; l < n; ++l) {
    const double target = rng.uniform(l) * total;
    std::size_t idx = static_cast<std::size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), target) - cumulative.begin());
    idx = std::min(idx, cats.size() - 1);
    const std::size_t c = cats[idx];
    Neuron nr;
    if (c == np) {
      nr.w.assign(f.dim(), 0.0);
      nr.a = norm;
      nr.b = f.constant_term() > 0.0 ? 0.0 : std::numbers::pi;
    } else {
      nr.w = f.pair_frequency(c);
      nr.a = norm * std::pow(1.0 + f.pair_radius(c), -k);
      nr.b = std::arg(f.pair_amplitude(c));
    }
    net.neurons.push_back(std::move(nr));
  }
  return net;
}

double network_eval(const CosineNetwork& net, std::span<const double> x) {
  if (x.size() != net.dim) throw Error(ErrorCode::kDimensionMismatch, "point dimension");
  double acc = 0.0;
  for (const auto& nr : net.neurons) {
    double theta = nr.b;
    for (std::size_t k = 0; k < net.dim; ++k) theta += nr.w[k] * x[k];
    acc += nr.a * std::cos(theta);
  }
  return acc / static_cast<double>(net.n);
}

SpectralFunction network_to_spectral(const CosineNetwork& net) {
  std::vector<FourierAtom> atoms;
  atoms.reserve(net.neurons.size());
  const double inv_n = 1.0 / static_cast<double>(net.n);
  for (const auto& nr : net.neurons) atoms.push_back({nr.w, std::polar(nr.a * inv_n, nr.b)});
  return SpectralFunction::real_part(net.dim, atoms);
}

double h_k_norm_squared(const SpectralFunction& e, const Box& box, int k,
                        const QuadratureOptions& opts) {
  check_order(k);
  if (box.dim() != e.dim()) throw Error(ErrorCode::kDimensionMismatch, "box dimension");
  if (e.is_zero()) return 0.0;
  const std::size_t d = e.dim();
  std::vector<SpectralFunction> terms{e};
  std::vector<SpectralFunction> level{e};
  for (int order = 1; order <= k; ++order) {
    std::vector<SpectralFunction> next;
    for (const auto& g : level) {
      for (std::size_t axis = 0; axis < d; ++axis) next.push_back(partial_derivative(g, axis));
    }
    terms.insert(terms.end(), next.begin(), next.end());
    level = std::move(next);
  }

  auto estimate = [&](std::size_t per_axis) {
    const PointSet pts = midpoint_grid(box, per_axis);
    std::vector<double> acc(pts.size(), 0.0);
    for (const auto& t : terms) {
      if (t.is_zero()) continue;
      const std::vector<double> v = eval_points(t, pts);
      for (std::size_t i = 0; i < v.size(); ++i) acc[i] += v[i] * v[i];
    }
    double total = 0.0;
    for (double v : acc) total += v;
    return total * box.volume() / static_cast<double>(pts.size());
  };

  std::size_t per_axis = std::max<std::size_t>(opts.start_per_axis, 1);
  auto points_for = [&](std::size_t m) {
    double t = 1.0;
    for (std::size_t i = 0; i < d; ++i) t *= static_cast<double>(m);
    return t;
  };
  double prev = estimate(per_axis);
  while (points_for(2 * per_axis) <= static_cast<double>(opts.max_points)) {
    per_axis *= 2;
    const double cur = estimate(per_axis);
    const double change = std::abs(cur - prev);
    prev = cur;
    if (change <= opts.rel_change * std::abs(cur)) break;
  }
  return prev;
}

double network_h_k_error(const CosineNetwork& net, const SpectralFunction& f, const Box& box,
                         int k, const QuadratureOptions& opts) {
  if (net.dim != f.dim()) throw Error(ErrorCode::kDimensionMismatch, "network dimension");
  const SpectralFunction e = subtract(network_to_spectral(net), f.without_ledger());
  return std::sqrt(h_k_norm_squared(e, box, k, opts));
}

CosineNetwork sample_best_of(const SpectralFunction& f, int k, std::size_t n,
                             std::uint64_t seed, std::size_t trials, const Box& box,
                             const QuadratureOptions& opts) {
  if (trials == 0) throw Error(ErrorCode::kInvalidArgument, "best-of needs at least one trial");
  CosineNetwork best;
  double best_err = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    CosineNetwork net = sample_network(f, k, n, derived_seed(seed, n, t));
    const double err = network_h_k_error(net, f, box, k, opts);
    if (t == 0 || err < best_err) {
      best = std::move(net);
      best_err = err;
    }
  }
  return best;
}

std::vector<RateRow> rate_study(const SpectralFunction& f, int k,
                                const std::vector<std::size_t>& ns, std::size_t trials,
                                std::uint64_t seed, const Box& box,
                                const QuadratureOptions& opts) {
  check_order(k);
  if (f.is_zero()) throw Error(ErrorCode::kZeroFunction, "rate study of the zero function");
  const double norm = barron_norm(f, k);
  const double vol = box.volume();
  std::vector<RateRow> rows(ns.size() * trials);
  for (std::size_t a = 0; a < ns.size(); ++a) {
    for (std::size_t t = 0; t < trials; ++t) {
      RateRow& r = rows[a * trials + t];
      r.n = ns[a];
      r.trial = t;
      r.bound = std::sqrt(vol) * norm / std::sqrt(static_cast<double>(ns[a]));
    }
  }
  parallel_for(rows.size(), 1, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const CosineNetwork net = sample_network(f, k, rows[i].n, derived_seed(seed, rows[i].n,
                                                                                rows[i].trial));
      rows[i].h_k_error = network_h_k_error(net, f, box, k, opts);
    }
  });
  return rows;
}

}  // namespace barronhjb
