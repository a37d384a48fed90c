#include <cmath>

#include "barronhjb/kernels.hpp"

namespace barronhjb::kernels {

double eval_point_scalar(const TermView& t, const double* x) {
  double acc = 0.0;
  for (std::size_t p = 0; p < t.count; ++p) {
    double theta = 0.0;
    for (std::size_t k = 0; k < t.dim; ++k) theta += t.freq[k * t.count + p] * x[k];
    acc += t.re[p] * std::cos(theta) - t.im[p] * std::sin(theta);
  }
  return t.constant + 2.0 * acc;
}

void eval_batch_scalar(const TermView& t, const double* xs, std::size_t n, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = eval_point_scalar(t, xs + i * t.dim);
}

}  // namespace barronhjb::kernels
