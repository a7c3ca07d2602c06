#pragma once

// Arithmetic in F_p and small dense linear algebra over F_p.

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "klsf/errors.hpp"

namespace klsf {

using Residue = std::uint32_t;

constexpr bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw ParameterError("modulus " + std::to_string(p) + " is not prime");
}

/// Reduces any signed value into [0, p).
constexpr Residue mod_reduce(std::int64_t x, Residue p) noexcept {
  const std::int64_t r = x % static_cast<std::int64_t>(p);
  return static_cast<Residue>(r < 0 ? r + p : r);
}

constexpr Residue mod_add(Residue a, Residue b, Residue p) noexcept {
  const std::uint64_t s = std::uint64_t{a} + b;
  return static_cast<Residue>(s >= p ? s - p : s);
}

constexpr Residue mod_sub(Residue a, Residue b, Residue p) noexcept {
  return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + p - b);
}

constexpr Residue mod_mul(Residue a, Residue b, Residue p) noexcept {
  return static_cast<Residue>((std::uint64_t{a} * b) % p);
}

constexpr Residue mod_neg(Residue a, Residue p) noexcept { return a == 0 ? 0 : p - a; }

constexpr Residue mod_pow(Residue base, std::uint64_t e, Residue p) noexcept {
  std::uint64_t r = 1 % p, b = base % p;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<Residue>(r);
}

/// Multiplicative inverse modulo a prime.
inline Residue mod_inv(Residue a, Residue p) {
  if (a % p == 0) throw ParameterError("zero has no inverse modulo " + std::to_string(p));
  return mod_pow(a % p, p - 2, p);
}

/// p^n, refusing results above `limit`.
inline std::uint64_t checked_power(std::uint64_t p, unsigned n,
                                   std::uint64_t limit = std::uint64_t{1} << 40) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (r > limit / p) throw UnsupportedError("p^n exceeds supported size");
    r *= p;
  }
  return r;
}

/// Dense matrix over F_p, row-major.
class ModMatrix {
 public:
  ModMatrix(Residue p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  /// Builds from rows of residues (values are reduced mod p).
  static ModMatrix from_rows(Residue p, const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    ModMatrix m(p, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw ParameterError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = mod_reduce(rows[i][j], p);
    }
    return m;
  }

  /// Matrix whose columns are the given vectors.
  static ModMatrix from_columns(Residue p, const std::vector<std::vector<Residue>>& cols) {
    const std::size_t c = cols.size();
    const std::size_t r = c ? cols.front().size() : 0;
    ModMatrix m(p, r, c);
    for (std::size_t j = 0; j < c; ++j) {
      if (cols[j].size() != r) throw ParameterError("column length mismatch");
      for (std::size_t i = 0; i < r; ++i) m(i, j) = cols[j][i] % p;
    }
    return m;
  }

  static ModMatrix identity(Residue p, std::size_t n) {
    ModMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % p;
    return m;
  }

  Residue modulus() const noexcept { return p_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Residue& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Residue operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const ModMatrix&) const = default;

  std::vector<Residue> column(std::size_t j) const {
    std::vector<Residue> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  std::vector<Residue> apply(const std::vector<Residue>& x) const {
    if (x.size() != cols_) throw ParameterError("vector length does not match matrix");
    std::vector<Residue> y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc = (acc + std::uint64_t{(*this)(i, j)} * x[j]) % p_;
      y[i] = static_cast<Residue>(acc);
    }
    return y;
  }

  ModMatrix operator*(const ModMatrix& o) const {
    if (cols_ != o.rows_ || p_ != o.p_) throw ParameterError("matrix shape mismatch");
    ModMatrix r(p_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < o.cols_; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t t = 0; t < cols_; ++t) acc = (acc + std::uint64_t{(*this)(i, t)} * o(t, j)) % p_;
        r(i, j) = static_cast<Residue>(acc);
      }
    return r;
  }

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> row_reduce() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t sel = row;
      while (sel < rows_ && (*this)(sel, col) == 0) ++sel;
      if (sel == rows_) continue;
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(sel, j), (*this)(row, j));
      const Residue inv = mod_inv((*this)(row, col), p_);
      for (std::size_t j = 0; j < cols_; ++j) (*this)(row, j) = mod_mul((*this)(row, j), inv, p_);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == row || (*this)(i, col) == 0) continue;
        const Residue f = (*this)(i, col);
        for (std::size_t j = 0; j < cols_; ++j)
          (*this)(i, j) = mod_sub((*this)(i, j), mod_mul(f, (*this)(row, j), p_), p_);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    ModMatrix c = *this;
    return c.row_reduce().size();
  }

  bool invertible() const { return rows_ == cols_ && rank() == rows_; }

  std::optional<ModMatrix> inverse() const {
    if (rows_ != cols_) return std::nullopt;
    const std::size_t n = rows_;
    ModMatrix aug(p_, n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = 1 % p_;
    }
    const auto piv = aug.row_reduce();
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    ModMatrix inv(p_, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
  }

  /// Basis of the right null space; each vector scaled so its first nonzero entry is 1.
  std::vector<std::vector<Residue>> kernel_basis() const {
    ModMatrix r = *this;
    const auto piv = r.row_reduce();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<Residue>> basis;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<Residue> v(cols_, 0);
      v[f] = 1 % p_;
      for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = mod_neg(r(i, f), p_);
      basis.push_back(normalize_leading(std::move(v), p_));
    }
    return basis;
  }

  static std::vector<Residue> normalize_leading(std::vector<Residue> v, Residue p) {
    for (Residue x : v) {
      if (x == 0) continue;
      const Residue inv = mod_inv(x, p);
      for (auto& y : v) y = mod_mul(y, inv, p);
      break;
    }
    return v;
  }

 private:
  Residue p_;
  std::size_t rows_, cols_;
  std::vector<Residue> data_;
};

}  // namespace klsf
