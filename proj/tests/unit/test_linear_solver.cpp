#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "barronhjb/error.hpp"
#include "barronhjb/grid.hpp"
#include "barronhjb/linear_solver.hpp"
#include "oracles.hpp"
#include "random_functions.hpp"

using namespace barronhjb;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

ValidatedProblem problem_1d(double gamma, const SpectralFunction& f, const SpectralFunction& ell,
                            double s = 2.0) {
  ProblemSpec p;
  p.d = 1;
  p.m = 1;
  p.gamma = gamma;
  p.s = s;
  p.f = {f};
  p.g = SpectralMatrix(1, 1, 1);
  p.g(0, 0) = SpectralFunction::constant(1, 1.0);
  p.ell = ell;
  p.R = Matrix{{1.0}};
  return validate(p);
}

SpectralFunction cosx(double a = 1.0, double w = 1.0) { return SpectralFunction::cosine({w}, a); }

PointSet line(std::size_t n, double half) { return uniform_grid(1, half, n); }

}  // namespace

TEST_CASE("C_gamma") {
  CHECK(c_gamma(3.0) == 0.5);
  CHECK_THAT(c_gamma(8.0), WithinAbs(0.25, 1e-16));
}

TEST_CASE("drift") {
  const auto vp = problem_1d(1.0, cosx(), SpectralFunction(1));
  const SpectralVector zero{SpectralFunction(1)};
  CHECK(drift(vp, zero)[0] == cosx());
  const SpectralVector u{cosx()};
  const auto mu = drift(vp, u)[0];
  CHECK(mu.pair_count() == 1);
  CHECK_THAT(eval(mu, std::vector<double>{0.4}), WithinAbs(2.0 * std::cos(0.4), 1e-15));
}

TEST_CASE("apply_T") {
  const SpectralVector mu{SpectralFunction::constant(1, 0.7)};
  CHECK(apply_T(mu, SpectralFunction::constant(1, 5.0), 1.0).is_zero());
  const auto t = apply_T(mu, cosx(), 1.0);
  for (double x : {0.0, 1.0, -2.5}) {
    CHECK_THAT(eval(t, std::vector<double>{x}), WithinAbs(-0.35 * std::sin(x), 1e-15));
  }
}

TEST_CASE("apply_T norm bound on random inputs") {
  gen::Source src(8);
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = static_cast<std::size_t>(src.integer(1, 3));
    SpectralVector mu;
    for (std::size_t k = 0; k < d; ++k) mu.push_back(src.function(d, 8));
    const auto v = src.function(d, 10);
    const double gamma = src.uniform(0.1, 6.0);
    const double s = src.integer(1, 3);
    const double bound = c_gamma(gamma) * barron_norm(mu, s) * barron_norm(v, s + 1.0);
    CHECK(barron_norm(apply_T(mu, v, gamma), s + 1.0) <= bound * (1.0 + 1e-12) + 1e-15);
  }
}

TEST_CASE("pure resolvent solve") {
  const auto vp = problem_1d(1.0, SpectralFunction(1), cosx());
  const SpectralVector u{SpectralFunction(1)};
  const auto res = solve_linearized(vp, u);
  CHECK(res.terms_used == 1);
  CHECK(res.contraction_q == 0.0);
  CHECK(res.V == cosx(0.5));
  CHECK(res.certificate() == 0.0);
  const PointSet grid = default_grid(1, std::numbers::pi);
  CHECK(pde_residual(vp, u, res.V, grid) <= 1e-12);
}

TEST_CASE("zero source gives zero solution") {
  const auto vp = problem_1d(2.0, cosx(0.3, 2.0), SpectralFunction(1));
  const SpectralVector u{SpectralFunction(1)};
  const auto res = solve_linearized(vp, u);
  CHECK(res.V.is_zero());
}

TEST_CASE("drift instance residual") {
  const auto vp = problem_1d(4.0, cosx(0.1), cosx());
  const SpectralVector u{SpectralFunction(1)};
  SolverOptions opts;
  opts.tol = 1e-8;
  const auto res = solve_linearized(vp, u, opts);
  CHECK(res.contraction_q < 1.0);
  const PointSet grid = line(200, std::numbers::pi);
  CHECK(pde_residual(vp, u, res.V, grid) <= 10.0 * opts.tol);
  CHECK(pde_residual(vp, u, res.V, grid) <= 10.0 * residual_certificate(vp, u, res, std::numbers::pi));
}

TEST_CASE("perturbed solution has a larger residual") {
  const double gamma = 1.0;
  const auto vp = problem_1d(gamma, SpectralFunction(1), cosx());
  const SpectralVector u{SpectralFunction(1)};
  const PointSet grid = line(201, std::numbers::pi);
  const auto V = cosx(0.5);
  const double base = pde_residual(vp, u, V, grid);
  const double pert = pde_residual(vp, u, V + cosx(0.1, 3.0), grid);
  CHECK(base <= 1e-12);
  // At x = 0 the perturbation contributes 0.1 (gamma + 9).
  CHECK(pert >= 0.1 * (gamma + 9.0) * (1.0 - 1e-12));
  CHECK(pert > base);
}

TEST_CASE("solver matches a periodic Galerkin solve") {
  // mu = 0.1 cos x + 0.05 sin 2x, ell = 1 + cos x + 0.5 sin 3x, gamma = 3.
  const auto f = cosx(0.1) + SpectralFunction::sine({2.0}, 0.05);
  const auto ell = SpectralFunction::constant(1, 1.0) + cosx() + SpectralFunction::sine({3.0}, 0.5);
  const auto vp = problem_1d(3.0, f, ell);
  const SpectralVector u{SpectralFunction(1)};
  SolverOptions opts;
  opts.tol = 1e-11;
  const auto res = solve_linearized(vp, u, opts);
  REQUIRE(res.contraction_q < 1.0);

  using oracle::Complex;
  // Two-sided coefficients: cos kx = (e^{ikx} + e^{-ikx})/2, sin kx = (e^{ikx} - e^{-ikx})/(2i).
  std::vector<Complex> mu(5, 0.0), l(7, 0.0);
  mu[2 + 1] += 0.05;
  mu[2 - 1] += 0.05;
  mu[2 + 2] += Complex(0.0, -0.025);
  mu[2 - 2] += Complex(0.0, 0.025);
  l[3] = 1.0;
  l[3 + 1] += 0.5;
  l[3 - 1] += 0.5;
  l[3 + 3] += Complex(0.0, -0.25);
  l[3 - 3] += Complex(0.0, 0.25);
  const auto coef = oracle::galerkin_1d(3.0, mu, 2, l, 3, 80);
  const double cert = res.certificate();
  for (double x = -4.0; x <= 4.0; x += 0.37) {
    const double mine = eval(res.V, std::vector<double>{x});
    CHECK_THAT(mine, WithinAbs(oracle::eval_two_sided(coef, x), cert + 1e-12));
  }
}

TEST_CASE("term norms decay geometrically and the tail shrinks with tol") {
  const auto f = cosx(0.2) + SpectralFunction::sine({0.7}, 0.1);
  const auto vp = problem_1d(5.0, f, cosx(1.0, 1.3));
  const SpectralVector u{SpectralFunction(1)};
  double prev_tail = std::numeric_limits<double>::infinity();
  std::size_t prev_terms = 0;
  for (double tol : {1e-3, 1e-6, 1e-9}) {
    SolverOptions opts;
    opts.tol = tol;
    const auto res = solve_linearized(vp, u, opts);
    CHECK(res.tail_bound < tol);
    CHECK(res.tail_bound <= prev_tail);
    CHECK(res.terms_used >= prev_terms);
    for (std::size_t k = 1; k < res.term_norms.size(); ++k) {
      CHECK(res.term_norms[k] <= (res.contraction_q + 1e-10) * res.term_norms[k - 1]);
    }
    CHECK(res.V.ledger_at(vp.spec.s + 1.0) >= res.certificate() * (1.0 - 1e-15));
    prev_tail = res.tail_bound;
    prev_terms = res.terms_used;
  }
}

TEST_CASE("pruning is certified") {
  const auto f = cosx(0.2) + SpectralFunction::sine({0.7}, 0.1) + cosx(0.05, 2.1);
  const auto vp = problem_1d(5.0, f, cosx(1.0, 1.3) + cosx(0.3, 0.2));
  const SpectralVector u{SpectralFunction(1)};
  SolverOptions exact_opts;
  exact_opts.tol = 1e-12;
  const auto exact = solve_linearized(vp, u, exact_opts);
  SolverOptions opts;
  opts.tol = 1e-6;
  opts.max_atoms = 8;
  const auto res = solve_linearized(vp, u, opts);
  CHECK(res.prune_ledger > 0.0);
  CHECK(res.V.atom_count() <= 8);
  const double err = barron_norm(subtract(exact.V.without_ledger(), res.V.without_ledger()), 3.0);
  CHECK(err <= res.certificate() + exact.certificate() + 1e-12);
  const PointSet grid = default_grid(1, std::numbers::pi);
  CHECK(pde_residual(vp, u, res.V, grid) <= residual_certificate(vp, u, res, std::numbers::pi));
}

TEST_CASE("contraction failure and budget") {
  const SpectralVector u{SpectralFunction(1)};
  const auto strong = problem_1d(1.0, cosx(3.0), cosx());
  try {
    solve_linearized(strong, u);
    FAIL("expected NotContractive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNotContractive);
  }
  const auto mild = problem_1d(3.0, cosx(0.4), cosx());
  SolverOptions opts;
  opts.max_terms = 3;
  opts.tol = 1e-12;
  try {
    solve_linearized(mild, u, opts);
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBudgetExceeded);
  }
}

TEST_CASE("random contractive instances") {
  gen::Source src(99);
  int solved = 0;
  for (int t = 0; t < 60; ++t) {
    const std::size_t d = static_cast<std::size_t>(src.integer(1, 2));
    ProblemSpec p;
    p.d = d;
    p.m = 1;
    p.gamma = src.uniform(1.0, 8.0);
    p.s = 2.0;
    for (std::size_t k = 0; k < d; ++k) p.f.push_back(scale(src.function(d, 4, 2.0), 0.1));
    p.g = SpectralMatrix(d, 1, d);
    for (auto& e : p.g.entries) e = SpectralFunction::constant(d, src.uniform(0.1, 0.5));
    p.ell = src.function(d, 6, 2.0);
    p.R = Matrix{{1.0}};
    const auto vp = validate(p);
    const SpectralVector u{scale(src.function(d, 4, 2.0), 0.2)};
    const double q = c_gamma(p.gamma) * barron_norm(drift(vp, u), p.s);
    if (q > 0.8) continue;
    SolverOptions opts;
    opts.tol = 1e-7;
    opts.max_atoms = 400;
    const auto res = solve_linearized(vp, u, opts);
    ++solved;
    const PointSet grid = default_grid(d, std::numbers::pi);
    const double r = pde_residual(vp, u, res.V, grid);
    CHECK(r <= 10.0 * residual_certificate(vp, u, res, max_abs_coordinate(grid)));
  }
  CHECK(solved >= 30);
}
