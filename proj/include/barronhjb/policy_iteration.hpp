#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "barronhjb/grid.hpp"
#include "barronhjb/linear_solver.hpp"
#include "barronhjb/problem.hpp"

namespace barronhjb {

struct PolicyOptions {
  std::size_t max_iter = 50;
  double res_tol = 1e-6;
  double grid_window = 3.141592653589793;
  std::optional<PointSet> grid;  // default_grid(d, grid_window) when empty
  SolverOptions solver;
  std::size_t control_max_atoms = 2000;  // per control component, charged at order s
};

struct IterationRecord {
  std::size_t i = 0;
  double u_norm_s = 0.0;
  double V_norm_s1 = 0.0;
  double hjb_residual = 0.0;
  double successive_diff = 0.0;  // max grid |V_i - V_{i-1}|, 0 at i = 0
  double worst_violation = 0.0;  // max grid (V_i - V_{i-1}), 0 at i = 0
  double solve_cert = 0.0;
  double slack = 0.0;            // accumulated norm slack
  double monotone_slack = 0.0;
  double q = 0.0;
  std::size_t terms_used = 0;
  bool value_decrease_ok = true;
  bool u_bound_ok = true;
  bool V_bound_ok = true;
  bool recurrence_ok = true;
};

enum class StopReason { kResidualTol, kIterCap, kNotContractive };

std::string_view stop_reason_name(StopReason r) noexcept;

struct PolicyIterationReport {
  std::vector<IterationRecord> iterations;
  bool converged = false;
  StopReason stop_reason = StopReason::kIterCap;
  std::string detail;
  FixedPointReport fixed_point;
  SpectralVector u_final;          // control update of V_final
  SpectralFunction V_final;
  SpectralVector u_last;           // control V_final was solved for
  std::size_t grid_points = 0;
  double final_check_residual = 0.0;  // hjb_residual of V_final on the refined grid
  std::size_t final_check_points = 0;
  bool bounds_ok = true;
  bool monotone_ok = true;
  bool residual_monotone = true;   // flagged only, never a failure
};

/// Residual of the HJB equation in minimized form,
///   -gamma V + grad V . f - 1/4 p^T R^{-1} p + Delta V + ell,  p = g^T grad V,
/// maximized in absolute value over the points.
double hjb_residual(const ValidatedProblem& vp, const SpectralFunction& V,
                    const PointSet& points);

struct MonotonicityResult {
  bool ok = true;
  double worst_violation = 0.0;
};

MonotonicityResult monotonicity_check(const SpectralFunction& V_prev,
                                      const SpectralFunction& V_next, const PointSet& points,
                                      double slack);

/// Policy iteration from u0. Throws kDiscountTooSmall if the discount
/// condition fails and kInitialControlTooLarge if ||u0||_{B^s} >= x0 (x0 = 0
/// admits only u0 = 0). NotContractive during the run ends it with that
/// stop reason; kBudgetExceeded from the solver propagates.
PolicyIterationReport run_policy_iteration(const ValidatedProblem& vp,
                                           std::span<const SpectralFunction> u0,
                                           const PolicyOptions& opts = {});

}  // namespace barronhjb
