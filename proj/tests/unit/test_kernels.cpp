#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <random>

#include "barronhjb/kernels.hpp"
#include "barronhjb/spectral_function.hpp"
#include "random_functions.hpp"

using namespace barronhjb;

namespace {

double mass(const SpectralFunction& f) { return barron_norm(f, 0.0); }

}  // namespace

TEST_CASE("scalar batch equals scalar point evaluation") {
  gen::Source src(1);
  for (int t = 0; t < 40; ++t) {
    const std::size_t d = static_cast<std::size_t>(src.integer(1, 4));
    const auto f = src.function(d, 20, 6.0);
    const std::size_t n = static_cast<std::size_t>(src.integer(1, 23));
    std::vector<double> xs;
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = src.point(d, 10.0);
      xs.insert(xs.end(), x.begin(), x.end());
    }
    std::vector<double> out(n);
    kernels::eval_batch_scalar(f.view(), xs.data(), n, out.data());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(out[i] == kernels::eval_point_scalar(f.view(), xs.data() + i * d));
    }
  }
}

#if defined(BARRONHJB_HAVE_AVX2)

TEST_CASE("vector sincos is close to libm") {
  if (kernels::detected_isa() != kernels::Isa::kAvx2) SKIP("no AVX2 on this CPU");
  std::mt19937_64 eng(9);
  std::vector<double> xs;
  for (double scale : {1e-8, 1.0, 10.0, 1e3, 1e5, 1e7, 1e12}) {
    std::uniform_real_distribution<double> u(-scale, scale);
    for (int i = 0; i < 2000; ++i) xs.push_back(u(eng));
  }
  for (double v : {0.0, -0.0, 1.5707963267948966, 3.141592653589793, 1e6, -1e6, 1e6 + 1})
    xs.push_back(v);
  std::vector<double> s(xs.size()), c(xs.size());
  kernels::sincos_avx2(xs.data(), xs.size(), s.data(), c.data());
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    // Absolute error in units of eps: sin near multiples of pi is tiny.
    worst = std::max(worst, std::abs(s[i] - std::sin(xs[i])) / std::numeric_limits<double>::epsilon());
    worst = std::max(worst, std::abs(c[i] - std::cos(xs[i])) / std::numeric_limits<double>::epsilon());
  }
  CHECK(worst <= 4.0);
}

TEST_CASE("AVX2 evaluation agrees with scalar evaluation") {
  if (kernels::detected_isa() != kernels::Isa::kAvx2) SKIP("no AVX2 on this CPU");
  gen::Source src(2);
  for (int t = 0; t < 60; ++t) {
    const std::size_t d = static_cast<std::size_t>(src.integer(1, 5));
    const auto f = src.function(d, 30, 8.0);
    const std::size_t n = static_cast<std::size_t>(src.integer(1, 37));
    std::vector<double> xs;
    for (std::size_t i = 0; i < n; ++i) {
      const auto x = src.point(d, 50.0);
      xs.insert(xs.end(), x.begin(), x.end());
    }
    std::vector<double> a(n), b(n);
    kernels::eval_batch_scalar(f.view(), xs.data(), n, a.data());
    kernels::eval_batch_avx2(f.view(), xs.data(), n, b.data());
    const double tol = 1e-13 * (1.0 + mass(f));
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(a[i] - b[i]) <= tol);
      CHECK(std::abs(kernels::eval_point_avx2(f.view(), xs.data() + i * d) - b[i]) <= tol);
    }
  }
}

TEST_CASE("AVX2 batch value does not depend on the lane") {
  if (kernels::detected_isa() != kernels::Isa::kAvx2) SKIP("no AVX2 on this CPU");
  gen::Source src(3);
  const auto f = src.nonzero_function(3, 24, 5.0);
  std::vector<double> xs;
  for (int i = 0; i < 9; ++i) {
    const auto x = src.point(3, 7.0);
    xs.insert(xs.end(), x.begin(), x.end());
  }
  std::vector<double> full(9);
  kernels::eval_batch_avx2(f.view(), xs.data(), 9, full.data());
  for (std::size_t shift = 1; shift < 5; ++shift) {
    std::vector<double> out(9 - shift);
    kernels::eval_batch_avx2(f.view(), xs.data() + shift * 3, 9 - shift, out.data());
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == full[i + shift]);
  }
}

#endif

TEST_CASE("forcing the scalar path") {
  const auto before = kernels::active_isa();
  CHECK(kernels::set_active_isa(kernels::Isa::kScalar) == kernels::Isa::kScalar);
  const auto f = SpectralFunction::cosine({1.0, 2.0}, 0.5, 0.1);
  const std::vector<double> x{0.3, -0.7};
  CHECK(eval(f, x) == kernels::eval_point_scalar(f.view(), x.data()));
  kernels::set_active_isa(before);
  CHECK(kernels::active_isa() == before);
}

TEST_CASE("empty and constant views") {
  const SpectralFunction z(2);
  const std::vector<double> x{1.0, 2.0};
  CHECK(kernels::eval_point(z.view(), x.data()) == 0.0);
  const auto c = SpectralFunction::constant(2, -1.25);
  double out[3];
  const std::vector<double> xs{0, 0, 1, 1, 2, 2};
  kernels::eval_batch(c.view(), xs.data(), 3, out);
  CHECK(out[0] == -1.25);
  CHECK(out[2] == -1.25);
}
