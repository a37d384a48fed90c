#include <atomic>
#include <cstdlib>
#include <string_view>

#include "barronhjb/kernels.hpp"

namespace barronhjb::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(BARRONHJB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa initial_isa() noexcept {
  if (const char* env = std::getenv("BARRONHJB_SIMD")) {
    if (std::string_view(env) == "scalar") return Isa::kScalar;
  }
  return detected_isa();
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Isa detected_isa() noexcept { return cpu_has_avx2() ? Isa::kAvx2 : Isa::kScalar; }

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) noexcept {
  if (isa == Isa::kAvx2 && !cpu_has_avx2()) isa = Isa::kScalar;
  current().store(isa, std::memory_order_relaxed);
  return isa;
}

double eval_point(const TermView& terms, const double* x) {
#if defined(BARRONHJB_HAVE_AVX2)
  if (active_isa() == Isa::kAvx2) return eval_point_avx2(terms, x);
#endif
  return eval_point_scalar(terms, x);
}

void eval_batch(const TermView& terms, const double* xs, std::size_t n, double* out) {
#if defined(BARRONHJB_HAVE_AVX2)
  if (active_isa() == Isa::kAvx2) return eval_batch_avx2(terms, xs, n, out);
#endif
  eval_batch_scalar(terms, xs, n, out);
}

}  // namespace barronhjb::kernels
