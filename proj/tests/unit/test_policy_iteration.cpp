#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "barronhjb/error.hpp"
#include "barronhjb/grid.hpp"
#include "barronhjb/linear_solver.hpp"
#include "barronhjb/policy_iteration.hpp"
#include "random_functions.hpp"

using namespace barronhjb;
using Catch::Matchers::WithinAbs;

namespace {

ValidatedProblem benchmark(const SpectralFunction& ell, double gamma = 5.0) {
  ProblemSpec p;
  p.d = 1;
  p.m = 1;
  p.gamma = gamma;
  p.f = {SpectralFunction(1)};
  p.g = SpectralMatrix(1, 1, 1);
  p.g(0, 0) = SpectralFunction::constant(1, 1.0);
  p.ell = ell;
  p.R = Matrix{{1.0}};
  return validate(p);
}

SpectralFunction lq_cost() {
  return SpectralFunction::constant(1, 0.05) + SpectralFunction::cosine({1.0}, 0.05);
}

}  // namespace

TEST_CASE("hjb residual of simple functions") {
  const auto zero = benchmark(SpectralFunction(1));
  const PointSet grid = default_grid(1, std::numbers::pi);
  CHECK(hjb_residual(zero, SpectralFunction(1), grid) == 0.0);
  const auto cosine = benchmark(SpectralFunction::cosine({1.0}, 1.0));
  CHECK_THAT(hjb_residual(cosine, SpectralFunction(1), grid), WithinAbs(1.0, 1e-15));
}

TEST_CASE("monotonicity check") {
  const auto V = SpectralFunction::cosine({1.0}, 0.3) + SpectralFunction::constant(1, 1.0);
  const PointSet grid = default_grid(1, std::numbers::pi);
  const auto same = monotonicity_check(V, V, grid, 0.0);
  CHECK(same.ok);
  CHECK(same.worst_violation == 0.0);
  const auto lower = monotonicity_check(V, V - SpectralFunction::constant(1, 0.1), grid, 0.0);
  CHECK(lower.ok);
  CHECK_THAT(lower.worst_violation, WithinAbs(-0.1, 1e-15));
  const auto higher = monotonicity_check(V, V + SpectralFunction::constant(1, 0.1), grid, 0.05);
  CHECK_FALSE(higher.ok);
}

TEST_CASE("zero running cost converges immediately") {
  const auto vp = benchmark(SpectralFunction(1), 1.0);
  const auto rep = run_policy_iteration(vp, zero_control(vp));
  CHECK(rep.converged);
  CHECK(rep.stop_reason == StopReason::kResidualTol);
  REQUIRE(rep.iterations.size() == 1);
  CHECK(rep.iterations[0].hjb_residual == 0.0);
  CHECK(rep.V_final.is_zero());
  CHECK(rep.u_final[0].is_zero());
  CHECK(rep.fixed_point.x0 == 0.0);
}

TEST_CASE("benchmark problem") {
  const auto vp = benchmark(lq_cost());
  const auto rep = run_policy_iteration(vp, zero_control(vp));
  CHECK(rep.converged);
  CHECK(rep.iterations.size() <= 20);
  CHECK(rep.bounds_ok);
  CHECK(rep.monotone_ok);
  CHECK(rep.final_check_residual <= 1e-6);
  for (const auto& it : rep.iterations) {
    CHECK(it.u_norm_s <= rep.fixed_point.x0 + it.slack);
    CHECK(it.V_norm_s1 <= rep.fixed_point.V_bound + it.slack);
    CHECK(it.value_decrease_ok);
    CHECK(it.recurrence_ok);
  }
  // V is even and decreasing across iterations at x = 0.
  const std::vector<double> x0{0.0};
  CHECK(eval(rep.V_final, x0) <= eval(solve_linearized(vp, zero_control(vp)).V, x0) + 1e-15);
  // The final control is the update of V_final; u_last generated V_final.
  const auto u_again = control_update(vp, rep.V_final);
  CHECK_THAT(barron_norm(subtract(u_again[0], rep.u_final[0]), 2.0), WithinAbs(0.0, 1e-15));
}

TEST_CASE("initial control above x0 is rejected") {
  const auto vp = benchmark(lq_cost());
  const auto fp = fixed_point(vp);
  const SpectralVector u0{SpectralFunction::constant(1, fp.x0 + 0.1)};
  try {
    run_policy_iteration(vp, u0);
    FAIL("expected InitialControlTooLarge");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInitialControlTooLarge);
  }
}

TEST_CASE("iteration cap") {
  const auto vp = benchmark(lq_cost());
  PolicyOptions opts;
  opts.max_iter = 1;
  opts.res_tol = 1e-14;
  const auto rep = run_policy_iteration(vp, zero_control(vp), opts);
  CHECK_FALSE(rep.converged);
  CHECK(rep.stop_reason == StopReason::kIterCap);
  CHECK(rep.iterations.size() == 1);
}

TEST_CASE("linear-only problems cannot iterate") {
  ProblemSpec p;
  p.d = 1;
  p.m = 1;
  p.gamma = 5.0;
  p.s = 1.0;
  p.f = {SpectralFunction(1)};
  p.g = SpectralMatrix(1, 1, 1);
  p.g(0, 0) = SpectralFunction::constant(1, 1.0);
  p.ell = lq_cost();
  p.R = Matrix{{1.0}};
  const auto vp = validate(p, true);
  try {
    run_policy_iteration(vp, zero_control(vp));
    FAIL("expected OrderTooLow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kOrderTooLow);
  }
}

TEST_CASE("two-dimensional problem with state-dependent gain") {
  ProblemSpec p;
  p.d = 2;
  p.m = 1;
  p.gamma = 6.0;
  p.f = {SpectralFunction::sine({0.0, 1.0}, 0.02), SpectralFunction(2)};
  p.g = SpectralMatrix(2, 1, 2);
  p.g(0, 0) = SpectralFunction::constant(2, 0.5);
  p.g(1, 0) = SpectralFunction::cosine({1.0, 0.0}, 0.1);
  p.ell = SpectralFunction::constant(2, 0.04) + SpectralFunction::cosine({1.0, 1.0}, 0.02);
  p.R = Matrix{{2.0}};
  const auto vp = validate(p);
  PolicyOptions opts;
  opts.res_tol = 1e-8;
  const auto rep = run_policy_iteration(vp, zero_control(vp), opts);
  CHECK(rep.converged);
  CHECK(rep.bounds_ok);
  CHECK(rep.monotone_ok);
  CHECK(rep.final_check_residual <= 10.0 * opts.res_tol);
}
