#pragma once

#include <cstdint>
#include <string>

#include "klsf/errors.hpp"
#include "klsf/modular.hpp"

namespace klsf {

/// (k, l, p, n) with p = (k+l)m + 2 + λ, 0 ≤ λ < k+l.
struct Params {
  unsigned k = 2;
  unsigned l = 1;
  Residue p = 5;
  unsigned n = 1;

  static Params make(unsigned k, unsigned l, Residue p, unsigned n = 1) {
    Params r{k, l, p, n};
    r.validate();
    return r;
  }

  void validate() const {
    if (l < 1 || k <= l) throw ParameterError("require k > ℓ ≥ 1");
    require_prime(p);
    if (p < k + l + 2) throw ParameterError("p too small: need m = ⌊(p-2)/(k+ℓ)⌋ ≥ 1");
  }

  unsigned kl() const noexcept { return k + l; }
  unsigned m() const noexcept { return (p - 2) / kl(); }
  unsigned lambda() const noexcept { return p - 2 - m() * kl(); }
  unsigned theta() const noexcept { return kl() + lambda() + 2; }

  /// λ ∈ [0, k+l-3]: the range where the extremal structures are cuboids.
  bool cuboid_range() const noexcept { return lambda() + 3 <= kl(); }

  /// ⌈(λ+1)/2⌉.
  unsigned extremal_count() const noexcept { return (lambda() + 2) / 2; }

  /// Size of the natural parts F_p^{n-1}.
  std::uint64_t layer() const { return checked_power(p, n - 1); }

  std::string to_string() const {
    return "(k,ℓ,p,n)=(" + std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(p) + "," +
           std::to_string(n) + ")";
  }

  bool operator==(const Params&) const = default;
};

}  // namespace klsf
