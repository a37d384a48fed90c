#pragma once

// Real functions on R^d represented exactly as finite sums of Fourier atoms
// a * exp(i xi . x), with conjugate symmetry enforced so every function is
// real. Storage keeps one representative per +/- pair (the member whose
// first non-negligible frequency component is positive) plus an optional
// zero-frequency term; atoms() expands the full list.
//
// Each function carries a ledger: order s -> certified upper bound on the
// B^s distance between the stored atoms and the function they stand for
// (mass dropped by pruning or by canonicalization, propagated through the
// algebra by worst-case rules).

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "barronhjb/kernels.hpp"

namespace barronhjb {

using Complex = std::complex<double>;
using Ledger = std::map<double, double>;

/// Frequencies closer than this (per component) are the same frequency.
inline constexpr double kFrequencyTolerance = 1e-12;
/// Atoms with |amplitude| below this after merging are dropped and charged.
inline constexpr double kAmplitudeFloor = 1e-15;

struct FourierAtom {
  std::vector<double> frequency;
  Complex amplitude;
};

class SpectralFunction {
 public:
  /// Zero function of dimension 0; only useful as a placeholder.
  SpectralFunction() = default;
  /// Zero function on R^dim.
  explicit SpectralFunction(std::size_t dim);

  static SpectralFunction constant(std::size_t dim, double value);
  /// amplitude * cos(frequency . x + phase)
  static SpectralFunction cosine(std::vector<double> frequency, double amplitude,
                                 double phase = 0.0);
  /// amplitude * sin(frequency . x)
  static SpectralFunction sine(std::vector<double> frequency, double amplitude);

  /// Builds from a conjugate-symmetric atom list. Coincident frequencies are
  /// merged. Throws kInvalidArgument if the atoms do not describe a real
  /// function, kDimensionMismatch on frequency length errors.
  static SpectralFunction from_atoms(std::size_t dim, std::span<const FourierAtom> atoms,
                                     Ledger ledger = {});

  /// Builds Re(sum_j a_j exp(i xi_j . x)) from an arbitrary atom list.
  static SpectralFunction real_part(std::size_t dim, std::span<const FourierAtom> atoms,
                                    Ledger ledger = {});

  std::size_t dim() const noexcept { return dim_; }
  std::size_t pair_count() const noexcept { return pairs_; }
  bool has_constant() const noexcept { return constant_ != 0.0; }
  double constant_term() const noexcept { return constant_; }
  std::size_t atom_count() const noexcept { return 2 * pairs_ + (has_constant() ? 1 : 0); }
  bool is_zero() const noexcept { return pairs_ == 0 && constant_ == 0.0; }

  double frequency(std::size_t pair, std::size_t axis) const {
    return freq_[axis * pairs_ + pair];
  }
  std::vector<double> pair_frequency(std::size_t pair) const;
  Complex pair_amplitude(std::size_t pair) const { return {re_[pair], im_[pair]}; }
  /// Euclidean norm of the pair's frequency.
  double pair_radius(std::size_t pair) const { return radius_[pair]; }
  double max_radius() const noexcept;

  /// Full conjugate-symmetric atom list: constant first, then each pair as
  /// (xi, a), (-xi, conj(a)).
  std::vector<FourierAtom> atoms() const;

  const Ledger& ledger() const noexcept { return ledger_; }
  /// Certified B^s slack: exact key, else the smallest entry at a higher
  /// order (embedding), else +inf. An empty ledger is an exact function.
  double ledger_at(double s) const;

  SpectralFunction with_ledger(Ledger ledger) const;
  SpectralFunction without_ledger() const { return with_ledger({}); }

  kernels::TermView view() const noexcept {
    return {dim_, pairs_, freq_.data(), re_.data(), im_.data(), constant_};
  }

  /// Exact structural equality (atoms and ledger).
  friend bool operator==(const SpectralFunction& a, const SpectralFunction& b) = default;

 private:
  friend class SpectralBuilder;

  std::size_t dim_ = 0;
  std::size_t pairs_ = 0;
  double constant_ = 0.0;
  std::vector<double> freq_;  // axis-major: freq_[axis * pairs_ + p]
  std::vector<double> re_;
  std::vector<double> im_;
  std::vector<double> radius_;
  Ledger ledger_;
};

using SpectralVector = std::vector<SpectralFunction>;

/// Row-major matrix of spectral functions (g in the control problem).
struct SpectralMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SpectralFunction> entries;

  SpectralMatrix() = default;
  SpectralMatrix(std::size_t r, std::size_t c, std::size_t dim)
      : rows(r), cols(c), entries(r * c, SpectralFunction(dim)) {}

  SpectralFunction& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  const SpectralFunction& operator()(std::size_t i, std::size_t j) const {
    return entries[i * cols + j];
  }
};

// ---------------------------------------------------------------------------
// Operations. All are pure; inputs are never modified.

double eval(const SpectralFunction& f, std::span<const double> x);

/// sum_j |a_j| (1 + |xi_j|)^s over the stored atoms (ledger not included).
double barron_norm(const SpectralFunction& f, double s);
double barron_norm(std::span<const SpectralFunction> fs, double s);
double barron_norm(const SpectralMatrix& g, double s);

/// Certified bound on sup_x |f(x)| for the stored atoms: the B^0 norm.
double sup_bound(const SpectralFunction& f);

SpectralFunction add(const SpectralFunction& f, const SpectralFunction& g);
SpectralFunction subtract(const SpectralFunction& f, const SpectralFunction& g);
SpectralFunction scale(const SpectralFunction& f, double c);
SpectralFunction multiply(const SpectralFunction& f, const SpectralFunction& g);

/// d/dx_axis with a zero-based axis.
SpectralFunction partial_derivative(const SpectralFunction& f, std::size_t axis);
SpectralFunction laplacian(const SpectralFunction& f);

/// (gamma I - Laplacian)^{-1} f.
SpectralFunction resolvent(const SpectralFunction& f, double gamma);

/// Keeps the max_atoms atoms of largest |a|(1+|xi|)^s_account, keeping
/// conjugate pairs together. Removed mass is charged to the ledger at
/// s_account and at every order the ledger already tracks.
SpectralFunction prune(const SpectralFunction& f, std::size_t max_atoms, double s_account);

inline SpectralFunction operator+(const SpectralFunction& f, const SpectralFunction& g) {
  return add(f, g);
}
inline SpectralFunction operator-(const SpectralFunction& f, const SpectralFunction& g) {
  return subtract(f, g);
}
inline SpectralFunction operator*(const SpectralFunction& f, const SpectralFunction& g) {
  return multiply(f, g);
}
inline SpectralFunction operator*(double c, const SpectralFunction& f) { return scale(f, c); }

/// Sum of a list of functions (all the same dimension).
SpectralFunction sum(std::span<const SpectralFunction> fs, std::size_t dim);

/// Evaluates f at n point-major points into out (dispatching kernel).
void eval_many(const SpectralFunction& f, std::span<const double> points, std::span<double> out);

}  // namespace barronhjb
