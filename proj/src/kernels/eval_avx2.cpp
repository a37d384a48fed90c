#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "barronhjb/kernels.hpp"

namespace barronhjb::kernels {

namespace {

// Cody-Waite split of pi/2 and minimax kernels from fdlibm (k_sin.c, k_cos.c).
constexpr double kPio2Hi = 1.57079632673412561417e+00;
constexpr double kPio2Lo = 6.07710050650619224932e-11;
constexpr double kTwoOverPi = 6.36619772367581382433e-01;
constexpr double kReduceLimit = 1e6;

constexpr double S1 = -1.66666666666666324348e-01;
constexpr double S2 = 8.33333333332248946124e-03;
constexpr double S3 = -1.98412698298579493134e-04;
constexpr double S4 = 2.75573137070700676789e-06;
constexpr double S5 = -2.50507602534068634195e-08;
constexpr double S6 = 1.58969099521155010221e-10;

constexpr double C1 = 4.16666666666666019037e-02;
constexpr double C2 = -1.38888888888741095749e-03;
constexpr double C3 = 2.48015872894767294178e-05;
constexpr double C4 = -2.75573143513906633035e-07;
constexpr double C5 = 2.08757232129817482790e-09;
constexpr double C6 = -1.13596475577881948265e-11;

inline __m256d bc(double v) { return _mm256_set1_pd(v); }

inline void sincos4(__m256d x, __m256d& s_out, __m256d& c_out) {
  const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, bc(kTwoOverPi)),
                                    _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(q, bc(kPio2Hi), x);
  r = _mm256_fnmadd_pd(q, bc(kPio2Lo), r);
  const __m256d z = _mm256_mul_pd(r, r);

  __m256d ps = _mm256_fmadd_pd(z, bc(S6), bc(S5));
  ps = _mm256_fmadd_pd(z, ps, bc(S4));
  ps = _mm256_fmadd_pd(z, ps, bc(S3));
  ps = _mm256_fmadd_pd(z, ps, bc(S2));
  const __m256d v = _mm256_mul_pd(z, r);
  const __m256d sin_r = _mm256_fmadd_pd(v, _mm256_fmadd_pd(z, ps, bc(S1)), r);

  __m256d pc = _mm256_fmadd_pd(z, bc(C6), bc(C5));
  pc = _mm256_fmadd_pd(z, pc, bc(C4));
  pc = _mm256_fmadd_pd(z, pc, bc(C3));
  pc = _mm256_fmadd_pd(z, pc, bc(C2));
  pc = _mm256_fmadd_pd(z, pc, bc(C1));
  const __m256d zr = _mm256_mul_pd(z, pc);
  const __m256d hz = _mm256_mul_pd(bc(0.5), z);
  const __m256d w = _mm256_sub_pd(bc(1.0), hz);
  const __m256d tail =
      _mm256_add_pd(_mm256_sub_pd(_mm256_sub_pd(bc(1.0), w), hz), _mm256_mul_pd(z, zr));
  const __m256d cos_r = _mm256_add_pd(w, tail);

  const __m256i qi = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(q));
  const __m256i odd = _mm256_cmpeq_epi64(_mm256_and_si256(qi, _mm256_set1_epi64x(1)),
                                         _mm256_set1_epi64x(1));
  const __m256d swap = _mm256_castsi256_pd(odd);
  __m256d s = _mm256_blendv_pd(sin_r, cos_r, swap);
  __m256d c = _mm256_blendv_pd(cos_r, sin_r, swap);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256i s_sign = _mm256_slli_epi64(_mm256_and_si256(qi, two), 62);
  const __m256i c_sign =
      _mm256_slli_epi64(_mm256_and_si256(_mm256_add_epi64(qi, _mm256_set1_epi64x(1)), two), 62);
  s = _mm256_xor_pd(s, _mm256_castsi256_pd(s_sign));
  c = _mm256_xor_pd(c, _mm256_castsi256_pd(c_sign));

  // Lanes outside the reduction range (or non-finite) take the libm path.
  const __m256d ax = _mm256_andnot_pd(bc(-0.0), x);
  const __m256d big = _mm256_cmp_pd(ax, bc(kReduceLimit), _CMP_NLE_UQ);
  if (_mm256_movemask_pd(big) != 0) {
    alignas(32) double xs[4], ss[4], cs[4];
    _mm256_store_pd(xs, x);
    _mm256_store_pd(ss, s);
    _mm256_store_pd(cs, c);
    const int mask = _mm256_movemask_pd(big);
    for (int l = 0; l < 4; ++l) {
      if (mask & (1 << l)) {
        ss[l] = std::sin(xs[l]);
        cs[l] = std::cos(xs[l]);
      }
    }
    s = _mm256_load_pd(ss);
    c = _mm256_load_pd(cs);
  }
  s_out = s;
  c_out = c;
}

inline double hsum(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] + t[1]) + (t[2] + t[3]);
}

}  // namespace

void sincos_avx2(const double* x, std::size_t n, double* s, double* c) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vs, vc;
    sincos4(_mm256_loadu_pd(x + i), vs, vc);
    _mm256_storeu_pd(s + i, vs);
    _mm256_storeu_pd(c + i, vc);
  }
  if (i < n) {
    alignas(32) double xs[4] = {0.0, 0.0, 0.0, 0.0}, ss[4], cs[4];
    for (std::size_t l = 0; i + l < n; ++l) xs[l] = x[i + l];
    __m256d vs, vc;
    sincos4(_mm256_load_pd(xs), vs, vc);
    _mm256_store_pd(ss, vs);
    _mm256_store_pd(cs, vc);
    for (std::size_t l = 0; i + l < n; ++l) {
      s[i + l] = ss[l];
      c[i + l] = cs[l];
    }
  }
}

double eval_point_avx2(const TermView& t, const double* x) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t p = 0;
  for (; p + 4 <= t.count; p += 4) {
    __m256d theta = _mm256_setzero_pd();
    for (std::size_t k = 0; k < t.dim; ++k) {
      theta = _mm256_fmadd_pd(_mm256_loadu_pd(t.freq + k * t.count + p), bc(x[k]), theta);
    }
    __m256d s, c;
    sincos4(theta, s, c);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(t.re + p), c, acc);
    acc = _mm256_fnmadd_pd(_mm256_loadu_pd(t.im + p), s, acc);
  }
  if (p < t.count) {
    alignas(32) double th[4] = {0, 0, 0, 0}, re[4] = {0, 0, 0, 0}, im[4] = {0, 0, 0, 0};
    for (std::size_t l = 0; p + l < t.count; ++l) {
      double v = 0.0;
      for (std::size_t k = 0; k < t.dim; ++k) v = std::fma(t.freq[k * t.count + p + l], x[k], v);
      th[l] = v;
      re[l] = t.re[p + l];
      im[l] = t.im[p + l];
    }
    __m256d s, c;
    sincos4(_mm256_load_pd(th), s, c);
    acc = _mm256_fmadd_pd(_mm256_load_pd(re), c, acc);
    acc = _mm256_fnmadd_pd(_mm256_load_pd(im), s, acc);
  }
  return t.constant + 2.0 * hsum(acc);
}

void eval_batch_avx2(const TermView& t, const double* xs, std::size_t n, double* out) {
  const std::size_t d = t.dim;
  alignas(32) double coords[4 * 16];
  std::vector<double> heap;
  double* cb = coords;
  if (d > 16) {
    heap.resize(4 * d);
    cb = heap.data();
  }
  for (std::size_t i = 0; i < n; i += 4) {
    const std::size_t lanes = (n - i < 4) ? n - i : 4;
    // coords[k*4 + lane]; missing lanes repeat the last point.
    for (std::size_t l = 0; l < 4; ++l) {
      const double* pt = xs + (i + (l < lanes ? l : lanes - 1)) * d;
      for (std::size_t k = 0; k < d; ++k) cb[k * 4 + l] = pt[k];
    }
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t p = 0; p < t.count; ++p) {
      __m256d theta = _mm256_setzero_pd();
      for (std::size_t k = 0; k < d; ++k) {
        theta = _mm256_fmadd_pd(bc(t.freq[k * t.count + p]), _mm256_loadu_pd(cb + k * 4), theta);
      }
      __m256d s, c;
      sincos4(theta, s, c);
      acc = _mm256_fmadd_pd(bc(t.re[p]), c, acc);
      acc = _mm256_fnmadd_pd(bc(t.im[p]), s, acc);
    }
    alignas(32) double res[4];
    _mm256_store_pd(res, acc);
    for (std::size_t l = 0; l < lanes; ++l) out[i + l] = t.constant + 2.0 * res[l];
  }
}

}  // namespace barronhjb::kernels
