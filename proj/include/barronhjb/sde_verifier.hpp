#pragma once

// Monte Carlo estimate of the discounted cost
//   J(x) = E int_0^inf exp(-gamma t) (ell + u^T R u)(X_t) dt,
//   dX = (f + g u)(X) dt + sqrt(2) dW,  X_0 = x,
// by Euler-Maruyama with the running cost frozen at the left point of each step
// and the discount integrated exactly over it, truncated at a finite
// horizon. For the feedback u, J equals the solution of the linearized
// equation, which is what verify_value compares against.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "barronhjb/grid.hpp"
#include "barronhjb/problem.hpp"

namespace barronhjb {

struct SdeConfig {
  double dt = 1e-3;
  double horizon = 10.0;
  std::size_t n_paths = 10000;
  std::uint64_t seed = 0;
  bool antithetic = true;
  std::optional<double> c_bias;  // default 10 (1 + ||f + g u||_{B^0})^2
};

struct CostEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double tail_bound = 0.0;
  double bias_allowance = 0.0;  // c_bias * dt * (||ell||_{B^0} + C_{R,1} ||u||_{B^0}^2)
  std::size_t paths = 0;        // paths that contributed
  std::size_t failed_paths = 0;
  std::size_t steps = 0;
};

/// Throws kInvalidArgument on bad configuration and kSimulationFailure when
/// more than 1% of paths leave the finite range.
CostEstimate simulate_cost(const ValidatedProblem& vp, std::span<const SpectralFunction> u,
                           std::span<const double> x0, const SdeConfig& cfg);

struct PointCheck {
  std::vector<double> x;
  double V_val = 0.0;
  CostEstimate mc;
  double tolerance = 0.0;  // 3 std_error + tail + bias allowance
  bool pass = false;
};

struct VerifyReport {
  std::vector<PointCheck> per_point;
  bool all_pass = true;
};

VerifyReport verify_value(const ValidatedProblem& vp, std::span<const SpectralFunction> u,
                          const SpectralFunction& V, const PointSet& points,
                          const SdeConfig& cfg);

/// Same comparison against precomputed estimates (one per point), e.g. to
/// test several candidate value functions on one set of simulations.
VerifyReport compare_value(const SpectralFunction& V, const PointSet& points,
                           const std::vector<CostEstimate>& estimates);

}  // namespace barronhjb
