#pragma once

// Evaluation kernels for real trigonometric sums
//
//   value(x) = constant + 2 * sum_p ( re_p * cos(xi_p . x) - im_p * sin(xi_p . x) )
//
// which is how a conjugate-symmetric atom list is evaluated from one
// representative per +/- pair. Frequencies are stored axis-major
// (freq[axis * count + p]); points for the batched entry points are
// point-major (xs[i * dim + axis]).
//
// Every kernel has a scalar reference implementation. When the library is
// built with BARRONHJB_HAVE_AVX2 and the CPU reports AVX2+FMA, the AVX2
// variants are selected at first use. BARRONHJB_SIMD=scalar in the
// environment forces the scalar path.

#include <cstddef>
#include <string_view>

namespace barronhjb::kernels {

struct TermView {
  std::size_t dim = 0;
  std::size_t count = 0;
  const double* freq = nullptr;
  const double* re = nullptr;
  const double* im = nullptr;
  double constant = 0.0;
};

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Best ISA this binary and CPU can run.
Isa detected_isa() noexcept;

/// ISA currently used by the dispatching entry points.
Isa active_isa() noexcept;

/// Overrides dispatch (tests, benchmarking). Requesting an ISA that is not
/// available falls back to scalar; the ISA actually installed is returned.
Isa set_active_isa(Isa isa) noexcept;

double eval_point(const TermView& terms, const double* x);
void eval_batch(const TermView& terms, const double* xs, std::size_t n, double* out);

double eval_point_scalar(const TermView& terms, const double* x);
void eval_batch_scalar(const TermView& terms, const double* xs, std::size_t n, double* out);

#if defined(BARRONHJB_HAVE_AVX2)
double eval_point_avx2(const TermView& terms, const double* x);
void eval_batch_avx2(const TermView& terms, const double* xs, std::size_t n, double* out);

/// Vector sin/cos used by the AVX2 kernels, exposed for equivalence tests.
void sincos_avx2(const double* x, std::size_t n, double* s, double* c);
#endif

}  // namespace barronhjb::kernels
