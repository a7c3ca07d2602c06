#pragma once

// Fourier coefficients of indicator functions on F_p^n, normalized as
// f^(t) = p^{-n} Σ_x f(x) e^{-2πi<t,x>/p}, and the spectral bound for sum-free sets.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "klsf/errors.hpp"
#include "klsf/modular.hpp"
#include "klsf/vec_set.hpp"

namespace klsf {

using Complex = std::complex<double>;

/// Largest p^n accepted by the transforms.
inline constexpr std::uint64_t kMaxSpectrum = std::uint64_t{1} << 20;

struct Spectrum {
  Residue p = 2;
  unsigned n = 1;
  std::vector<Complex> coeffs;  // indexed like VecSet points
  double alpha = 0;

  /// max over t ≠ 0 of |coeff|.
  double max_nonzero() const {
    double best = 0;
    for (std::size_t i = 1; i < coeffs.size(); ++i) best = std::max(best, std::abs(coeffs[i]));
    return best;
  }
  double plancherel_sum() const {
    double s = 0;
    for (const auto& c : coeffs) s += std::norm(c);
    return s;
  }
};

/// Separable transform of an arbitrary function on F_p^n (values in VecSet index order),
/// one length-p DFT per axis, normalized by p^{-n}.
inline std::vector<Complex> fourier_transform(std::vector<Complex> f, Residue p, unsigned n) {
  const std::uint64_t total = checked_power(p, n, kMaxSpectrum);
  if (f.size() != total) throw ParameterError("function length does not match p^n");
  std::vector<Complex> roots(p);
  for (Residue j = 0; j < p; ++j) roots[j] = std::polar(1.0, -2.0 * std::numbers::pi * j / p);
  std::vector<Complex> line(p), out(p);
  std::uint64_t stride = 1;
  for (unsigned axis = 0; axis < n; ++axis) {
    for (std::uint64_t base = 0; base < total; ++base) {
      if ((base / stride) % p != 0) continue;
      for (Residue x = 0; x < p; ++x) line[x] = f[base + x * stride];
      for (Residue t = 0; t < p; ++t) {
        Complex acc = 0;
        for (Residue x = 0; x < p; ++x) acc += line[x] * roots[(std::uint64_t{t} * x) % p];
        out[t] = acc;
      }
      for (Residue t = 0; t < p; ++t) f[base + t * stride] = out[t];
    }
    stride *= p;
  }
  const double scale = 1.0 / static_cast<double>(total);
  for (auto& c : f) c *= scale;
  return f;
}

inline std::vector<Complex> indicator(const VecSet& a) {
  std::vector<Complex> f(a.space_size(), 0.0);
  a.for_each_index([&](std::uint64_t i) { f[i] = 1.0; });
  return f;
}

inline Spectrum spectrum(const VecSet& a) {
  Spectrum s;
  s.p = a.modulus();
  s.n = a.dim();
  if (a.space_size() > kMaxSpectrum) throw ParameterError("p^n exceeds the spectrum size limit 2^20");
  s.coeffs = fourier_transform(indicator(a), s.p, s.n);
  s.alpha = static_cast<double>(a.size()) / static_cast<double>(a.space_size());
  return s;
}

/// (α^{k+l-1} / (1-α))^{1/(k+l-2)}.
inline double sumfree_spectral_bound(double alpha, unsigned k, unsigned l) {
  if (!(alpha > 0 && alpha < 1)) throw ParameterError("α must lie in (0, 1)");
  if (k + l < 3) throw ParameterError("need k+ℓ ≥ 3");
  const double kl = k + l;
  return std::pow(std::pow(alpha, kl - 1) / (1 - alpha), 1.0 / (kl - 2));
}

struct SpectralCheck {
  bool applicable = false;
  double max_nonzero = 0;
  double bound = 0;
  double vanishing_residual = 0;  // |Σ_t c^{k-l} |c|^{2l}|
  bool pass = false;
};

/// For (k,l)-sum-free A: some t ≠ 0 has |1_A^(t)| ≥ bound, and Σ_t c^{k-l}|c|^{2l} = 0
/// since the k-fold and l-fold convolutions have disjoint supports.
inline SpectralCheck verify_spectral_lemma(const VecSet& a, unsigned k, unsigned l, double tol = 1e-9) {
  SpectralCheck r;
  if (a.empty() || !is_kl_sumfree(a, k, l)) return r;
  r.applicable = true;
  const auto s = spectrum(a);
  r.max_nonzero = s.max_nonzero();
  r.bound = sumfree_spectral_bound(s.alpha, k, l);
  Complex acc = 0;
  for (const auto& c : s.coeffs) acc += std::pow(c, static_cast<int>(k - l)) * std::pow(std::norm(c), static_cast<int>(l));
  r.vanishing_residual = std::abs(acc);
  r.pass = r.max_nonzero >= r.bound - tol && r.vanishing_residual <= tol;
  return r;
}

/// K = ker<t,.>, v the least-index vector with <t,v> = p-1. The part index of x is then -<t,x>.
inline Decomposition kernel_decomposition(const Point& t, Residue p) {
  require_prime(p);
  const unsigned n = static_cast<unsigned>(t.size());
  if (n < 1) throw ParameterError("empty character");
  bool zero = true;
  for (auto c : t) {
    if (c >= p) throw ParameterError("character coordinate out of range");
    if (c) zero = false;
  }
  if (zero) throw ParameterError("the trivial character has no kernel decomposition");
  ModMatrix row(p, 1, n);
  for (unsigned i = 0; i < n; ++i) row(0, i) = t[i];
  Decomposition d{Point(n, 0), row.kernel_basis()};
  const std::uint64_t total = checked_power(p, n, kMaxPoints);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Point x(n);
    std::uint64_t r = idx, acc = 0;
    for (unsigned i = 0; i < n; ++i) {
      x[i] = static_cast<Residue>(r % p);
      r /= p;
      acc += std::uint64_t{t[i]} * x[i];
    }
    if (acc % p == p - 1) {
      d.v = x;
      break;
    }
  }
  return d;
}

}  // namespace klsf
