#pragma once

// Evaluation point sets. All point sets are point-major: p[i * d + axis].

#include <cstddef>
#include <vector>

namespace barronhjb {

struct PointSet {
  std::size_t dim = 0;
  std::vector<double> coords;

  std::size_t size() const { return dim ? coords.size() / dim : 0; }
  const double* point(std::size_t i) const { return coords.data() + i * dim; }
  void append(const PointSet& other);
};

/// Tensor grid with per_axis equispaced points (endpoints included) on [-w, w]^d.
PointSet uniform_grid(std::size_t dim, double window, std::size_t per_axis);

/// n Halton points in [lo, hi]^d, starting at sequence index offset + 1.
PointSet halton_points(std::size_t dim, std::size_t n, double lo, double hi,
                       std::size_t offset = 0);

/// Radical inverse of i in the given base.
double radical_inverse(std::size_t i, unsigned base);

/// 2^ceil(10/d) points per axis on [-w, w]^d (1024 Halton points in the
/// window when d > 10) plus 100 Halton points in [-5, 5]^d.
PointSet default_grid(std::size_t dim, double window);

/// Strictly larger check grid: twice the per-axis resolution (or 4096
/// Halton points in the window when that exceeds 65536 points) plus 200
/// Halton points in [-5, 5]^d taken from a disjoint part of the sequence.
PointSet refined_grid(std::size_t dim, double window);

}  // namespace barronhjb
