#include <catch_amalgamated.hpp>

#include <cmath>

#include "barronhjb/error.hpp"
#include "barronhjb/parallel.hpp"
#include "barronhjb/sde_verifier.hpp"

using namespace barronhjb;
using Catch::Matchers::WithinAbs;

namespace {

ValidatedProblem scalar(double gamma, const SpectralFunction& ell, const SpectralFunction& f) {
  ProblemSpec p;
  p.d = 1;
  p.m = 1;
  p.gamma = gamma;
  p.f = {f};
  p.g = SpectralMatrix(1, 1, 1);
  p.g(0, 0) = SpectralFunction::constant(1, 0.7);
  p.ell = ell;
  p.R = Matrix{{1.0}};
  return validate(p, true);
}

SdeConfig quick(std::uint64_t seed = 1) {
  SdeConfig cfg;
  cfg.dt = 1e-2;
  cfg.horizon = 10.0;
  cfg.n_paths = 2000;
  cfg.seed = seed;
  return cfg;
}

PointSet points(std::initializer_list<double> xs) {
  PointSet ps{1, {}};
  for (double x : xs) ps.coords.push_back(x);
  return ps;
}

}  // namespace

TEST_CASE("constant running cost") {
  const double c = 1.5, gamma = 2.0;
  const auto vp = scalar(gamma, SpectralFunction::constant(1, c), SpectralFunction::cosine({1.0}, 0.3));
  const SpectralVector u{SpectralFunction(1)};
  const std::vector<double> x{0.4};
  const auto est = simulate_cost(vp, u, x, quick());
  CHECK(est.std_error <= 1e-14);
  CHECK(std::abs(est.mean - c / gamma) <= 3.0 * est.std_error + est.tail_bound);
  CHECK(est.failed_paths == 0);
  CHECK(est.paths == 2000);
}

TEST_CASE("zero cost is exactly zero") {
  const auto vp = scalar(1.0, SpectralFunction(1), SpectralFunction::cosine({1.0}, 0.3));
  const SpectralVector u{SpectralFunction(1)};
  const std::vector<double> x{0.0};
  const auto est = simulate_cost(vp, u, x, quick());
  CHECK(est.mean == 0.0);
  CHECK(est.std_error == 0.0);
}

TEST_CASE("closed-form resolvent value") {
  // gamma V - V'' = 1 + cos x has V = 1/2 + cos(x)/3.
  const auto vp = scalar(2.0, SpectralFunction::constant(1, 1.0) + SpectralFunction::cosine({1.0}, 1.0),
                         SpectralFunction(1));
  const SpectralVector u{SpectralFunction(1)};
  const auto V = SpectralFunction::constant(1, 0.5) + SpectralFunction::cosine({1.0}, 1.0 / 3.0);
  CHECK_THAT(eval(V, std::vector<double>{0.0}), WithinAbs(5.0 / 6.0, 1e-15));
  const auto rep = verify_value(vp, u, V, points({0.0, 1.0}), quick(3));
  CHECK(rep.all_pass);
  for (const auto& pc : rep.per_point) CHECK(pc.mc.std_error > 0.0);

  // Doubling V is caught at both points.
  std::vector<CostEstimate> est;
  for (const auto& pc : rep.per_point) est.push_back(pc.mc);
  const auto wrong = compare_value(scale(V, 2.0), points({0.0, 1.0}), est);
  for (const auto& pc : wrong.per_point) CHECK_FALSE(pc.pass);
  CHECK_FALSE(wrong.all_pass);
}

TEST_CASE("controlled path cost includes the control term") {
  // u = 0.5 constant with g = 0.7: cost is (ell + 0.25) / gamma for constant ell.
  const auto vp = scalar(1.0, SpectralFunction::constant(1, 0.5), SpectralFunction(1));
  const SpectralVector u{SpectralFunction::constant(1, 0.5)};
  const std::vector<double> x{2.0};
  const auto est = simulate_cost(vp, u, x, quick());
  CHECK(std::abs(est.mean - 0.75) <= 3.0 * est.std_error + est.tail_bound + 1e-12);
}

TEST_CASE("results do not depend on the thread count") {
  const auto vp = scalar(1.0, SpectralFunction::constant(1, 1.0) + SpectralFunction::cosine({1.0}, 1.0),
                         SpectralFunction::sine({1.0}, 0.2));
  const SpectralVector u{SpectralFunction::cosine({2.0}, 0.1)};
  const std::vector<double> x{0.3};
  set_thread_count(1);
  const auto a = simulate_cost(vp, u, x, quick(7));
  set_thread_count(4);
  const auto b = simulate_cost(vp, u, x, quick(7));
  set_thread_count(0);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  const auto c = simulate_cost(vp, u, x, quick(8));
  CHECK(c.mean != a.mean);
}

TEST_CASE("argument checks and failures") {
  const auto vp = scalar(1.0, SpectralFunction::constant(1, 1.0), SpectralFunction(1));
  const SpectralVector u{SpectralFunction(1)};
  const std::vector<double> x{0.0};
  auto cfg = quick();
  cfg.n_paths = 50;
  CHECK_THROWS_AS(simulate_cost(vp, u, x, cfg), Error);
  cfg = quick();
  cfg.dt = 0.0;
  CHECK_THROWS_AS(simulate_cost(vp, u, x, cfg), Error);

  // A huge drift overflows every path.
  const auto wild = scalar(1.0, SpectralFunction::constant(1, 1.0), SpectralFunction::constant(1, 1e307));
  cfg = quick();
  cfg.dt = 1.0;
  cfg.horizon = 100.0;
  try {
    simulate_cost(wild, u, x, cfg);
    FAIL("expected SimulationFailure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSimulationFailure);
  }
}
