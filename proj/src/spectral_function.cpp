#include "barronhjb/spectral_function.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "barronhjb/error.hpp"

namespace barronhjb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Raw atoms meaning Re(a exp(i xi.x)), atom-major frequencies.
struct RawAtoms {
  std::size_t dim = 0;
  std::vector<double> freq;
  std::vector<double> re;
  std::vector<double> im;

  std::size_t size() const { return re.size(); }
  void reserve(std::size_t n) {
    freq.reserve(n * dim);
    re.reserve(n);
    im.reserve(n);
  }
  void push(const double* xi, double ar, double ai) {
    freq.insert(freq.end(), xi, xi + dim);
    re.push_back(ar);
    im.push_back(ai);
  }
};

double weight(double r, double s) { return s == 0.0 ? 1.0 : std::pow(1.0 + r, s); }

void require_same_dim(const SpectralFunction& f, const SpectralFunction& g) {
  if (f.dim() != g.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "dimension mismatch: " + std::to_string(f.dim()) +
                                                   " vs " + std::to_string(g.dim()));
  }
}

void sort_cluster(const RawAtoms& raw, std::vector<std::size_t>& idx, std::size_t first,
                  std::size_t last, std::size_t axis,
                  std::vector<std::pair<std::size_t, std::size_t>>& groups) {
  const std::size_t d = raw.dim;
  auto key = [&](std::size_t i) { return raw.freq[i * d + axis]; };
  std::sort(idx.begin() + static_cast<std::ptrdiff_t>(first),
            idx.begin() + static_cast<std::ptrdiff_t>(last), [&](std::size_t a, std::size_t b) {
              const double ka = key(a), kb = key(b);
              return ka < kb || (ka == kb && a < b);
            });
  std::size_t run = first;
  for (std::size_t i = first + 1; i <= last; ++i) {
    if (i == last || key(idx[i]) - key(idx[i - 1]) > kFrequencyTolerance) {
      if (axis + 1 < d) {
        sort_cluster(raw, idx, run, i, axis + 1, groups);
      } else {
        groups.emplace_back(run, i);
      }
      run = i;
    }
  }
}

}  // namespace

class SpectralBuilder {
 public:
  SpectralBuilder(std::size_t dim, Ledger ledger) : dim_(dim), ledger_(std::move(ledger)) {}

  void set_constant(double c0) { c0_ = c0; }
  void push_pair(const double* xi, double re, double im) {
    freq_.insert(freq_.end(), xi, xi + dim_);
    re_.push_back(re);
    im_.push_back(im);
  }

  // Pairs must already be in canonical order with distinct frequencies.
  SpectralFunction finish() {
    SpectralFunction out(dim_);
    std::vector<double> charges;  // per existing ledger key
    std::vector<double> keys;
    for (const auto& [s, v] : ledger_) keys.push_back(s);
    charges.assign(keys.size(), 0.0);

    if (std::abs(c0_) < kAmplitudeFloor) {
      for (auto& c : charges) c += std::abs(c0_);
    } else {
      out.constant_ = c0_;
    }
    const std::size_t n = re_.size();
    std::vector<std::size_t> keep;
    std::vector<double> radius;
    keep.reserve(n);
    for (std::size_t p = 0; p < n; ++p) {
      const double mag = std::hypot(re_[p], im_[p]);
      double r2 = 0.0;
      for (std::size_t k = 0; k < dim_; ++k) r2 += freq_[p * dim_ + k] * freq_[p * dim_ + k];
      const double r = std::sqrt(r2);
      if (mag < kAmplitudeFloor) {
        for (std::size_t j = 0; j < keys.size(); ++j) charges[j] += 2.0 * mag * weight(r, keys[j]);
        continue;
      }
      keep.push_back(p);
      radius.push_back(r);
    }
    const std::size_t m = keep.size();
    out.pairs_ = m;
    out.freq_.resize(m * dim_);
    out.re_.resize(m);
    out.im_.resize(m);
    out.radius_ = std::move(radius);
    for (std::size_t q = 0; q < m; ++q) {
      const std::size_t p = keep[q];
      for (std::size_t k = 0; k < dim_; ++k) out.freq_[k * m + q] = freq_[p * dim_ + k];
      out.re_[q] = re_[p];
      out.im_[q] = im_[p];
    }
    std::size_t j = 0;
    for (auto& [s, v] : ledger_) v += charges[j++];
    out.ledger_ = std::move(ledger_);
    return out;
  }

  // Merges raw Re-atoms into canonical form.
  static SpectralFunction canonicalize(const RawAtoms& raw, Ledger ledger) {
    const std::size_t d = raw.dim;
    const std::size_t n = raw.size();
    SpectralBuilder b(d, std::move(ledger));
    double c0 = 0.0;
    std::vector<double> flipped(raw.freq.size());
    std::vector<double> fre(n), fim(n);
    std::vector<std::size_t> idx;
    idx.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double* xi = &raw.freq[i * d];
      int sign = 0;
      for (std::size_t k = 0; k < d; ++k) {
        if (std::abs(xi[k]) > kFrequencyTolerance) {
          sign = xi[k] > 0 ? 1 : -1;
          break;
        }
      }
      if (sign == 0) {
        c0 += raw.re[i];
        continue;
      }
      for (std::size_t k = 0; k < d; ++k) flipped[i * d + k] = sign * xi[k];
      fre[i] = raw.re[i];
      fim[i] = sign * raw.im[i];
      idx.push_back(i);
    }
    b.set_constant(c0);
    if (idx.empty()) return b.finish();

    RawAtoms view;
    view.dim = d;
    view.freq = std::move(flipped);
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    sort_cluster(view, idx, 0, idx.size(), 0, groups);
    for (const auto& [first, last] : groups) {
      double sr = 0.0, si = 0.0;
      for (std::size_t t = first; t < last; ++t) {
        sr += fre[idx[t]];
        si += fim[idx[t]];
      }
      b.push_pair(&view.freq[idx[first] * d], 0.5 * sr, 0.5 * si);
    }
    return b.finish();
  }

  static RawAtoms half_list(const SpectralFunction& f, double factor) {
    RawAtoms raw;
    raw.dim = f.dim_;
    raw.reserve(f.pairs_ + 1);
    std::vector<double> zero(f.dim_, 0.0), xi(f.dim_);
    if (f.constant_ != 0.0) raw.push(zero.data(), factor * f.constant_, 0.0);
    for (std::size_t p = 0; p < f.pairs_; ++p) {
      for (std::size_t k = 0; k < f.dim_; ++k) xi[k] = f.freq_[k * f.pairs_ + p];
      raw.push(xi.data(), 2.0 * factor * f.re_[p], 2.0 * factor * f.im_[p]);
    }
    return raw;
  }

  static SpectralFunction product(const SpectralFunction& f, const SpectralFunction& g,
                                  Ledger ledger) {
    const std::size_t d = f.dim_;
    RawAtoms raw;
    raw.dim = d;
    const std::size_t nf = f.atom_count();
    raw.reserve(nf * (1 + g.pairs_));
    // Full atom list of f.
    std::vector<double> ffreq;
    std::vector<double> fre, fim;
    ffreq.reserve(nf * d);
    if (f.constant_ != 0.0) {
      ffreq.insert(ffreq.end(), d, 0.0);
      fre.push_back(f.constant_);
      fim.push_back(0.0);
    }
    for (std::size_t p = 0; p < f.pairs_; ++p) {
      for (std::size_t k = 0; k < d; ++k) ffreq.push_back(f.freq_[k * f.pairs_ + p]);
      fre.push_back(f.re_[p]);
      fim.push_back(f.im_[p]);
      for (std::size_t k = 0; k < d; ++k) ffreq.push_back(-f.freq_[k * f.pairs_ + p]);
      fre.push_back(f.re_[p]);
      fim.push_back(-f.im_[p]);
    }
    std::vector<double> xi(d);
    if (g.constant_ != 0.0) {
      for (std::size_t j = 0; j < nf; ++j) {
        raw.push(&ffreq[j * d], fre[j] * g.constant_, fim[j] * g.constant_);
      }
    }
    for (std::size_t q = 0; q < g.pairs_; ++q) {
      const Complex gq(2.0 * g.re_[q], 2.0 * g.im_[q]);
      for (std::size_t j = 0; j < nf; ++j) {
        for (std::size_t k = 0; k < d; ++k) xi[k] = ffreq[j * d + k] + g.freq_[k * g.pairs_ + q];
        const Complex a = Complex(fre[j], fim[j]) * gq;
        raw.push(xi.data(), a.real(), a.imag());
      }
    }
    return canonicalize(raw, std::move(ledger));
  }

  template <class Fn>
  static SpectralFunction map_pairs(const SpectralFunction& f, double new_constant, Ledger ledger,
                                    Fn&& fn) {
    SpectralBuilder b(f.dim_, std::move(ledger));
    b.set_constant(new_constant);
    std::vector<double> xi(f.dim_);
    for (std::size_t p = 0; p < f.pairs_; ++p) {
      for (std::size_t k = 0; k < f.dim_; ++k) xi[k] = f.freq_[k * f.pairs_ + p];
      const Complex c = fn(p, Complex(f.re_[p], f.im_[p]));
      if (c == Complex(0.0, 0.0)) continue;
      b.push_pair(xi.data(), c.real(), c.imag());
    }
    return b.finish();
  }

  static SpectralFunction subset(const SpectralFunction& f, bool keep_constant,
                                 const std::vector<bool>& keep_pair, Ledger ledger) {
    SpectralBuilder b(f.dim_, {});
    b.set_constant(keep_constant ? f.constant_ : 0.0);
    std::vector<double> xi(f.dim_);
    for (std::size_t p = 0; p < f.pairs_; ++p) {
      if (!keep_pair[p]) continue;
      for (std::size_t k = 0; k < f.dim_; ++k) xi[k] = f.freq_[k * f.pairs_ + p];
      b.push_pair(xi.data(), f.re_[p], f.im_[p]);
    }
    SpectralFunction out = b.finish();
    out.ledger_ = std::move(ledger);
    return out;
  }

  static void set_ledger(SpectralFunction& f, Ledger ledger) { f.ledger_ = std::move(ledger); }

 private:
  std::size_t dim_;
  Ledger ledger_;
  double c0_ = 0.0;
  std::vector<double> freq_;  // pair-major while building
  std::vector<double> re_;
  std::vector<double> im_;
};

namespace {

// Result ledger on the union of keys, value = fn(key); infinite values dropped.
template <class Fn>
Ledger combine_ledgers(const Ledger& a, const Ledger& b, Fn&& fn) {
  Ledger out;
  if (a.empty() && b.empty()) return out;
  auto put = [&](double s) {
    const double v = fn(s);
    if (std::isfinite(v)) out[s] = v;
  };
  for (const auto& [s, v] : a) put(s);
  for (const auto& [s, v] : b) put(s);
  return out;
}

RawAtoms raw_from_atoms(std::size_t dim, std::span<const FourierAtom> atoms, Complex factor) {
  RawAtoms raw;
  raw.dim = dim;
  raw.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (a.frequency.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "atom frequency has length " + std::to_string(a.frequency.size()) +
                      ", expected " + std::to_string(dim));
    }
    for (double x : a.frequency) {
      if (!std::isfinite(x)) throw Error(ErrorCode::kInvalidArgument, "non-finite frequency");
    }
    if (!std::isfinite(a.amplitude.real()) || !std::isfinite(a.amplitude.imag())) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite amplitude");
    }
    const Complex c = a.amplitude * factor;
    raw.push(a.frequency.data(), c.real(), c.imag());
  }
  return raw;
}

}  // namespace

SpectralFunction::SpectralFunction(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "dimension must be positive");
}

SpectralFunction SpectralFunction::constant(std::size_t dim, double value) {
  SpectralFunction f(dim);
  if (!std::isfinite(value)) throw Error(ErrorCode::kInvalidArgument, "non-finite constant");
  if (std::abs(value) >= kAmplitudeFloor) f.constant_ = value;
  return f;
}

SpectralFunction SpectralFunction::cosine(std::vector<double> frequency, double amplitude,
                                          double phase) {
  const std::size_t d = frequency.size();
  const FourierAtom atom{std::move(frequency), std::polar(amplitude, phase)};
  return real_part(d, std::span<const FourierAtom>(&atom, 1));
}

SpectralFunction SpectralFunction::sine(std::vector<double> frequency, double amplitude) {
  const std::size_t d = frequency.size();
  const FourierAtom atom{std::move(frequency), Complex(0.0, -amplitude)};
  return real_part(d, std::span<const FourierAtom>(&atom, 1));
}

SpectralFunction SpectralFunction::real_part(std::size_t dim, std::span<const FourierAtom> atoms,
                                             Ledger ledger) {
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "dimension must be positive");
  return SpectralBuilder::canonicalize(raw_from_atoms(dim, atoms, 1.0), std::move(ledger));
}

SpectralFunction SpectralFunction::from_atoms(std::size_t dim, std::span<const FourierAtom> atoms,
                                              Ledger ledger) {
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "dimension must be positive");
  SpectralFunction re = SpectralBuilder::canonicalize(raw_from_atoms(dim, atoms, 1.0), {});
  const SpectralFunction im =
      SpectralBuilder::canonicalize(raw_from_atoms(dim, atoms, Complex(0.0, -1.0)), {});
  double total = 0.0;
  for (const auto& a : atoms) total += std::abs(a.amplitude);
  if (barron_norm(im, 0.0) > 1e-12 * (1.0 + total)) {
    throw Error(ErrorCode::kInvalidArgument, "atoms are not conjugate symmetric");
  }
  SpectralBuilder::set_ledger(re, std::move(ledger));
  return re;
}

std::vector<double> SpectralFunction::pair_frequency(std::size_t pair) const {
  std::vector<double> xi(dim_);
  for (std::size_t k = 0; k < dim_; ++k) xi[k] = freq_[k * pairs_ + pair];
  return xi;
}

double SpectralFunction::max_radius() const noexcept {
  double r = 0.0;
  for (double x : radius_) r = std::max(r, x);
  return r;
}

std::vector<FourierAtom> SpectralFunction::atoms() const {
  std::vector<FourierAtom> out;
  out.reserve(atom_count());
  if (has_constant()) out.push_back({std::vector<double>(dim_, 0.0), Complex(constant_, 0.0)});
  for (std::size_t p = 0; p < pairs_; ++p) {
    std::vector<double> xi = pair_frequency(p);
    std::vector<double> neg(xi.size());
    std::transform(xi.begin(), xi.end(), neg.begin(), [](double v) { return -v; });
    out.push_back({std::move(xi), Complex(re_[p], im_[p])});
    out.push_back({std::move(neg), Complex(re_[p], -im_[p])});
  }
  return out;
}

double SpectralFunction::ledger_at(double s) const {
  if (ledger_.empty()) return 0.0;
  auto it = ledger_.lower_bound(s);
  if (it == ledger_.end()) return kInf;
  double best = kInf;
  for (; it != ledger_.end(); ++it) best = std::min(best, it->second);
  return best;
}

SpectralFunction SpectralFunction::with_ledger(Ledger ledger) const {
  SpectralFunction out = *this;
  out.ledger_ = std::move(ledger);
  return out;
}

double eval(const SpectralFunction& f, std::span<const double> x) {
  if (x.size() != f.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "point has length " + std::to_string(x.size()) +
                                                   ", expected " + std::to_string(f.dim()));
  }
  return kernels::eval_point(f.view(), x.data());
}

void eval_many(const SpectralFunction& f, std::span<const double> points, std::span<double> out) {
  if (points.size() != out.size() * f.dim()) {
    throw Error(ErrorCode::kDimensionMismatch, "point buffer does not match output size");
  }
  kernels::eval_batch(f.view(), points.data(), out.size(), out.data());
}

double barron_norm(const SpectralFunction& f, double s) {
  double total = 0.0;
  for (std::size_t p = 0; p < f.pair_count(); ++p) {
    total += std::abs(f.pair_amplitude(p)) * weight(f.pair_radius(p), s);
  }
  return std::abs(f.constant_term()) + 2.0 * total;
}

double barron_norm(std::span<const SpectralFunction> fs, double s) {
  double total = 0.0;
  for (const auto& f : fs) total += barron_norm(f, s);
  return total;
}

double barron_norm(const SpectralMatrix& g, double s) { return barron_norm(g.entries, s); }

double sup_bound(const SpectralFunction& f) { return barron_norm(f, 0.0); }

SpectralFunction add(const SpectralFunction& f, const SpectralFunction& g) {
  require_same_dim(f, g);
  Ledger ledger = combine_ledgers(f.ledger(), g.ledger(),
                                  [&](double s) { return f.ledger_at(s) + g.ledger_at(s); });
  if (g.is_zero()) return f.with_ledger(std::move(ledger));
  if (f.is_zero()) return g.with_ledger(std::move(ledger));
  RawAtoms raw = SpectralBuilder::half_list(f, 1.0);
  const RawAtoms rg = SpectralBuilder::half_list(g, 1.0);
  raw.freq.insert(raw.freq.end(), rg.freq.begin(), rg.freq.end());
  raw.re.insert(raw.re.end(), rg.re.begin(), rg.re.end());
  raw.im.insert(raw.im.end(), rg.im.begin(), rg.im.end());
  return SpectralBuilder::canonicalize(raw, std::move(ledger));
}

SpectralFunction subtract(const SpectralFunction& f, const SpectralFunction& g) {
  return add(f, scale(g, -1.0));
}

SpectralFunction scale(const SpectralFunction& f, double c) {
  if (!std::isfinite(c)) throw Error(ErrorCode::kInvalidArgument, "non-finite scale factor");
  Ledger ledger;
  for (const auto& [s, v] : f.ledger()) ledger[s] = v * std::abs(c);
  if (c == 0.0) return SpectralFunction(f.dim()).with_ledger(std::move(ledger));
  return SpectralBuilder::map_pairs(f, f.constant_term() * c, std::move(ledger),
                                    [c](std::size_t, Complex a) { return a * c; });
}

SpectralFunction multiply(const SpectralFunction& f, const SpectralFunction& g) {
  require_same_dim(f, g);
  const Ledger& lf = f.ledger();
  const Ledger& lg = g.ledger();
  Ledger ledger = combine_ledgers(lf, lg, [&](double s) {
    const double ef = f.ledger_at(s), eg = g.ledger_at(s);
    // Avoid 0 * inf when one side is exact.
    double v = 0.0;
    if (ef != 0.0) v += ef * barron_norm(g, s);
    if (eg != 0.0) v += barron_norm(f, s) * eg;
    if (ef != 0.0 && eg != 0.0) v += ef * eg;
    return v;
  });
  if (f.is_zero() || g.is_zero()) return SpectralFunction(f.dim()).with_ledger(std::move(ledger));
  // Expand the function with more atoms against the half list of the other.
  if (f.pair_count() < g.pair_count()) return SpectralBuilder::product(g, f, std::move(ledger));
  return SpectralBuilder::product(f, g, std::move(ledger));
}

SpectralFunction partial_derivative(const SpectralFunction& f, std::size_t axis) {
  if (axis >= f.dim()) {
    throw Error(ErrorCode::kInvalidArgument, "axis " + std::to_string(axis) +
                                                 " out of range for dimension " +
                                                 std::to_string(f.dim()));
  }
  Ledger ledger;
  for (const auto& [s, v] : f.ledger()) ledger[s - 1.0] = v;
  return SpectralBuilder::map_pairs(f, 0.0, std::move(ledger), [&](std::size_t p, Complex a) {
    return Complex(0.0, f.frequency(p, axis)) * a;
  });
}

SpectralFunction laplacian(const SpectralFunction& f) {
  Ledger ledger;
  for (const auto& [s, v] : f.ledger()) ledger[s - 2.0] = v;
  return SpectralBuilder::map_pairs(f, 0.0, std::move(ledger), [&](std::size_t p, Complex a) {
    const double r = f.pair_radius(p);
    return a * (-r * r);
  });
}

SpectralFunction resolvent(const SpectralFunction& f, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::kInvalidArgument, "resolvent requires gamma > 0");
  }
  const double c_gamma = 1.0 / (2.0 * (std::sqrt(1.0 + gamma) - 1.0));
  Ledger ledger;
  auto put_min = [&](double s, double v) {
    auto [it, inserted] = ledger.emplace(s, v);
    if (!inserted) it->second = std::min(it->second, v);
  };
  for (const auto& [s, v] : f.ledger()) {
    put_min(s, v / gamma);
    put_min(s + 1.0, c_gamma * v);
  }
  return SpectralBuilder::map_pairs(f, f.constant_term() / gamma, std::move(ledger),
                                    [&](std::size_t p, Complex a) {
                                      const double r = f.pair_radius(p);
                                      return a / (gamma + r * r);
                                    });
}

SpectralFunction prune(const SpectralFunction& f, std::size_t max_atoms, double s_account) {
  if (max_atoms < 1) throw Error(ErrorCode::kInvalidArgument, "max_atoms must be at least 1");
  if (f.atom_count() <= max_atoms) return f;

  // Units: index pairs_ stands for the zero-frequency atom.
  const std::size_t np = f.pair_count();
  std::vector<std::size_t> units(np);
  std::iota(units.begin(), units.end(), 0);
  if (f.has_constant()) units.push_back(np);
  auto unit_weight = [&](std::size_t u) {
    if (u == np) return std::abs(f.constant_term());
    return std::abs(f.pair_amplitude(u)) * weight(f.pair_radius(u), s_account);
  };
  std::vector<double> w(np + 1, 0.0);
  for (std::size_t u : units) w[u] = unit_weight(u);
  std::stable_sort(units.begin(), units.end(), [&](std::size_t a, std::size_t b) {
    return w[a] > w[b];
  });

  std::vector<bool> keep(np, false);
  bool keep_constant = false;
  std::size_t used = 0;
  for (std::size_t u : units) {
    const std::size_t slots = (u == np) ? 1 : 2;
    if (used + slots > max_atoms) continue;
    used += slots;
    if (u == np) {
      keep_constant = true;
    } else {
      keep[u] = true;
    }
  }

  auto removed_mass = [&](double s) {
    double m = 0.0;
    if (f.has_constant() && !keep_constant) m += std::abs(f.constant_term());
    for (std::size_t p = 0; p < np; ++p) {
      if (!keep[p]) m += 2.0 * std::abs(f.pair_amplitude(p)) * weight(f.pair_radius(p), s);
    }
    return m;
  };
  Ledger ledger;
  std::vector<double> orders;
  for (const auto& [s, v] : f.ledger()) orders.push_back(s);
  orders.push_back(s_account);
  for (double s : orders) {
    const double v = f.ledger_at(s) + removed_mass(s);
    if (std::isfinite(v)) ledger[s] = v;
  }
  return SpectralBuilder::subset(f, keep_constant, keep, std::move(ledger));
}

SpectralFunction sum(std::span<const SpectralFunction> fs, std::size_t dim) {
  if (fs.empty()) return SpectralFunction(dim);
  RawAtoms raw;
  raw.dim = dim;
  Ledger ledger;
  bool any_ledger = false;
  for (const auto& f : fs) {
    if (f.dim() != dim) throw Error(ErrorCode::kDimensionMismatch, "sum: dimension mismatch");
    any_ledger = any_ledger || !f.ledger().empty();
    const RawAtoms r = SpectralBuilder::half_list(f, 1.0);
    raw.freq.insert(raw.freq.end(), r.freq.begin(), r.freq.end());
    raw.re.insert(raw.re.end(), r.re.begin(), r.re.end());
    raw.im.insert(raw.im.end(), r.im.begin(), r.im.end());
  }
  if (any_ledger) {
    std::vector<double> keys;
    for (const auto& f : fs)
      for (const auto& [s, v] : f.ledger()) keys.push_back(s);
    for (double s : keys) {
      double v = 0.0;
      for (const auto& f : fs) v += f.ledger_at(s);
      if (std::isfinite(v)) ledger[s] = v;
    }
  }
  return SpectralBuilder::canonicalize(raw, std::move(ledger));
}

}  // namespace barronhjb
