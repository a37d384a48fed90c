#include "barronhjb/grid.hpp"

#include <cmath>

#include "barronhjb/error.hpp"

namespace barronhjb {

namespace {

constexpr unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                                59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};

std::size_t per_axis_default(std::size_t dim) {
  const std::size_t e = (10 + dim - 1) / dim;
  return std::size_t{1} << e;
}

}  // namespace

void PointSet::append(const PointSet& other) {
  if (dim != other.dim) throw Error(ErrorCode::kDimensionMismatch, "point set dimension mismatch");
  coords.insert(coords.end(), other.coords.begin(), other.coords.end());
}

PointSet uniform_grid(std::size_t dim, double window, std::size_t per_axis) {
  PointSet ps{dim, {}};
  if (per_axis == 0) return ps;
  std::size_t total = 1;
  for (std::size_t k = 0; k < dim; ++k) total *= per_axis;
  ps.coords.resize(total * dim);
  const double step = per_axis > 1 ? 2.0 * window / static_cast<double>(per_axis - 1) : 0.0;
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    for (std::size_t k = 0; k < dim; ++k) {
      const std::size_t j = rem % per_axis;
      rem /= per_axis;
      ps.coords[i * dim + k] = per_axis > 1 ? -window + step * static_cast<double>(j) : 0.0;
    }
  }
  return ps;
}

double radical_inverse(std::size_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

PointSet halton_points(std::size_t dim, std::size_t n, double lo, double hi, std::size_t offset) {
  if (dim > std::size(kPrimes)) {
    throw Error(ErrorCode::kInvalidArgument, "Halton points support at most 30 dimensions");
  }
  PointSet ps{dim, std::vector<double>(n * dim)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      ps.coords[i * dim + k] = lo + (hi - lo) * radical_inverse(offset + i + 1, kPrimes[k]);
    }
  }
  return ps;
}

PointSet default_grid(std::size_t dim, double window) {
  PointSet ps = dim > 10 ? halton_points(dim, 1024, -window, window)
                         : uniform_grid(dim, window, per_axis_default(dim));
  ps.append(halton_points(dim, 100, -5.0, 5.0, 4096));
  return ps;
}

PointSet refined_grid(std::size_t dim, double window) {
  const std::size_t per_axis = 2 * per_axis_default(dim);
  double total = std::pow(static_cast<double>(per_axis), static_cast<double>(dim));
  PointSet ps = (dim > 10 || total > 65536.0) ? halton_points(dim, 4096, -window, window, 1024)
                                              : uniform_grid(dim, window, per_axis);
  ps.append(halton_points(dim, 200, -5.0, 5.0, 8192));
  return ps;
}

}  // namespace barronhjb
