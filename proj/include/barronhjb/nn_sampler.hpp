#pragma once

// Two-layer cosine networks f_n(x) = (1/n) sum_l a_l cos(w_l . x + b_l)
// sampled from a spectral function: neurons are drawn from the atoms with
// probability proportional to |amplitude| (1 + |xi|)^k, each with
// |a_l| = ||f||_{B^k} (1 + |w_l|)^{-k}, which makes f_n unbiased for f.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "barronhjb/spectral_function.hpp"

namespace barronhjb {

struct Neuron {
  double a = 0.0;
  std::vector<double> w;
  double b = 0.0;
};

struct CosineNetwork {
  std::size_t dim = 0;
  std::size_t n = 0;
  int k = 0;
  double source_norm = 0.0;
  std::vector<Neuron> neurons;
};

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;

  static Box symmetric(std::size_t dim, double half_width);
  std::size_t dim() const { return lo.size(); }
  double volume() const;
};

struct QuadratureOptions {
  std::size_t start_per_axis = 16;
  double rel_change = 1e-3;
  std::size_t max_points = std::size_t{1} << 20;
};

/// Throws kZeroFunction for f = 0 and kUnsupportedOrder for k outside 0..2
/// (or negative); kInvalidArgument for n = 0.
CosineNetwork sample_network(const SpectralFunction& f, int k, std::size_t n, std::uint64_t seed);

double network_eval(const CosineNetwork& net, std::span<const double> x);

/// Exact spectral form of the network (merged by frequency).
SpectralFunction network_to_spectral(const CosineNetwork& net);

/// sum over ordered index tuples of length <= k of the squared L^2(box)
/// norm of the corresponding derivative of e, by tensor midpoint rule with
/// per-axis doubling until the relative change drops below rel_change.
double h_k_norm_squared(const SpectralFunction& e, const Box& box, int k,
                        const QuadratureOptions& opts = {});

/// ||net - f||_{H^k(box)}
double network_h_k_error(const CosineNetwork& net, const SpectralFunction& f, const Box& box,
                         int k, const QuadratureOptions& opts = {});

/// Draws `trials` networks with seeds derived from `seed` and returns the
/// one with the smallest H^k(box) error (earliest on ties).
CosineNetwork sample_best_of(const SpectralFunction& f, int k, std::size_t n,
                             std::uint64_t seed, std::size_t trials, const Box& box,
                             const QuadratureOptions& opts = {});

struct RateRow {
  std::size_t n = 0;
  std::size_t trial = 0;
  double h_k_error = 0.0;
  double bound = 0.0;  // sqrt(|K|) ||f||_{B^k} / sqrt(n)
};

/// Independent trials for every n; the seed of (n, trial) is derived from
/// (seed, n, trial) only. Rows are ordered by n then trial.
std::vector<RateRow> rate_study(const SpectralFunction& f, int k,
                                const std::vector<std::size_t>& ns, std::size_t trials,
                                std::uint64_t seed, const Box& box,
                                const QuadratureOptions& opts = {});

/// Seed used by rate_study and sample_best_of for one (n, trial) draw.
std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t n, std::uint64_t trial);

}  // namespace barronhjb
