#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "barronhjb/grid.hpp"
#include "barronhjb/problem.hpp"

namespace barronhjb {

struct SolverOptions {
  double tol = 1e-8;
  std::size_t max_terms = 200;
  std::size_t max_atoms = 20000;
};

struct LinearSolveResult {
  SpectralFunction V;
  std::size_t terms_used = 0;
  double contraction_q = 0.0;
  double tail_bound = 0.0;    // B^{s+1} bound on the dropped series tail
  double prune_ledger = 0.0;  // B^{s+1} mass discarded by pruning, propagated
  double w_norm = 0.0;        // ||w||_{B^{s+1}} of the first term
  std::vector<double> term_norms;  // ||t_k||_{B^{s+1}} of the kept terms
  std::optional<double> norm_bound;  // a priori bound on ||V||_{B^{s+1}}

  double certificate() const { return tail_bound + prune_ledger; }
};

/// 1 / (2 (sqrt(1 + gamma) - 1)) = max_r (1 + r) / (gamma + r^2)
double c_gamma(double gamma);

/// f + g u
SpectralVector drift(const ValidatedProblem& vp, std::span<const SpectralFunction> u);

/// (gamma - Delta)^{-1} (mu . grad v)
SpectralFunction apply_T(std::span<const SpectralFunction> mu, const SpectralFunction& v,
                         double gamma);

/// Solves gamma V - Delta V - (f + g u) . grad V = ell + u^T R u by a
/// truncated Neumann series. Throws kNotContractive when
/// C_gamma ||f + g u||_{B^s} >= 1 and kBudgetExceeded when more than
/// max_terms terms would be needed.
LinearSolveResult solve_linearized(const ValidatedProblem& vp,
                                   std::span<const SpectralFunction> u,
                                   const SolverOptions& opts = {});

/// max over points of |-gamma V + (f + g u) . grad V + Delta V + ell + u^T R u|
double pde_residual(const ValidatedProblem& vp, std::span<const SpectralFunction> u,
                    const SpectralFunction& V, const PointSet& points);

/// Bound on pde_residual implied by a B^{s+1} error E = tail + prune:
/// (gamma + 1 + ||f + g u||_{B^0}) E, plus a floating-point evaluation floor
/// for points with coordinates up to max_abs_coord.
double residual_certificate(const ValidatedProblem& vp, std::span<const SpectralFunction> u,
                            const LinearSolveResult& result, double max_abs_coord);

/// Largest absolute coordinate in a point set.
double max_abs_coordinate(const PointSet& points);

/// Round-off floor for evaluating a residual assembled from functions with
/// the given total B^0 mass and largest frequency at |x| <= max_abs_coord.
double evaluation_floor(double mass, double max_radius, double max_abs_coord, std::size_t dim);

/// Values of f at every point, evaluated in parallel.
std::vector<double> eval_points(const SpectralFunction& f, const PointSet& points);

}  // namespace barronhjb
