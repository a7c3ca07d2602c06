#pragma once

// Subsets of F_p^n, decompositions (v, K) and the part/support/β machinery built on them.
//
// Points are encoded little-endian in coordinates: index(x) = Σ x_i p^i. Internally the
// mask is stored as p^(n-1) rows of p bits; row r holds the points whose coordinates
// x_1..x_{n-1} encode r, bit x_0 within the row.

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "klsf/bit_row.hpp"
#include "klsf/errors.hpp"
#include "klsf/modular.hpp"
#include "klsf/zp_set.hpp"

namespace klsf {

using Point = std::vector<Residue>;

/// Largest p^n accepted for a VecSet.
inline constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 22;

class VecSet {
 public:
  /// Empty subset of F_p^n. n = 0 denotes the one-point space {0}.
  VecSet(Residue p, unsigned n) : p_(p), n_(n) {
    require_prime(p);
    points_ = checked_power(p, n, kMaxPoints);
    const std::size_t width = n == 0 ? 1 : p;
    const std::size_t rows = n == 0 ? 1 : static_cast<std::size_t>(points_ / p);
    rows_.assign(rows, BitRow(width));
  }

  static VecSet full(Residue p, unsigned n) {
    VecSet s(p, n);
    for (auto& r : s.rows_) r.fill();
    return s;
  }

  /// base × F_p^(n-1).
  static VecSet cylinder(const ZpSet& base, unsigned n) {
    if (n == 0) throw ParameterError("cylinder needs n ≥ 1");
    VecSet s(base.modulus(), n);
    for (auto& r : s.rows_) r = base.bits();
    return s;
  }

  static VecSet from_zp(const ZpSet& a) { return cylinder(a, 1); }

  static VecSet from_points(Residue p, unsigned n, const std::vector<Point>& pts) {
    VecSet s(p, n);
    for (const auto& x : pts) s.insert(x);
    return s;
  }

  Residue modulus() const noexcept { return p_; }
  unsigned dim() const noexcept { return n_; }
  std::uint64_t space_size() const noexcept { return points_; }
  std::size_t row_count() const noexcept { return rows_.size(); }
  const BitRow& row(std::size_t r) const { return rows_[r]; }

  std::size_t size() const noexcept {
    std::size_t c = 0;
    for (const auto& r : rows_) c += r.count();
    return c;
  }
  bool empty() const noexcept {
    for (const auto& r : rows_)
      if (r.any()) return false;
    return true;
  }

  std::uint64_t index_of(const Point& x) const {
    if (x.size() != n_) throw ParameterError("point dimension mismatch");
    std::uint64_t idx = 0;
    for (std::size_t i = n_; i-- > 0;) {
      if (x[i] >= p_) throw ParameterError("coordinate out of range");
      idx = idx * p_ + x[i];
    }
    return idx;
  }

  Point point_of(std::uint64_t idx) const {
    Point x(n_);
    for (unsigned i = 0; i < n_; ++i) {
      x[i] = static_cast<Residue>(idx % p_);
      idx /= p_;
    }
    return x;
  }

  bool contains_index(std::uint64_t idx) const {
    if (n_ == 0) return rows_[0].test(0);
    return rows_[idx / p_].test(idx % p_);
  }
  void insert_index(std::uint64_t idx) {
    if (n_ == 0) {
      rows_[0].set(0);
      return;
    }
    rows_[idx / p_].set(idx % p_);
  }
  void erase_index(std::uint64_t idx) {
    if (n_ == 0) {
      rows_[0].reset(0);
      return;
    }
    rows_[idx / p_].reset(idx % p_);
  }
  bool contains(const Point& x) const { return contains_index(index_of(x)); }
  void insert(const Point& x) { insert_index(index_of(x)); }
  void erase(const Point& x) { erase_index(index_of(x)); }

  template <class F>
  void for_each_index(F&& f) const {
    const std::size_t width = rows_.empty() ? 0 : rows_[0].size();
    for (std::size_t r = 0; r < rows_.size(); ++r)
      rows_[r].for_each([&](std::size_t b) { f(static_cast<std::uint64_t>(r) * width + b); });
  }

  std::vector<Point> points() const {
    std::vector<Point> out;
    for_each_index([&](std::uint64_t i) { out.push_back(point_of(i)); });
    return out;
  }

  ZpSet to_zp() const {
    if (n_ != 1) throw ParameterError("only n = 1 sets convert to Z_p sets");
    ZpSet z(p_);
    z.mutable_bits() = rows_[0];
    return z;
  }

  VecSet complement() const {
    VecSet c = *this;
    for (auto& r : c.rows_) r.flip_all();
    return c;
  }
  bool is_subset_of(const VecSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (!rows_[i].is_subset_of(o.rows_[i])) return false;
    return true;
  }
  bool intersects(const VecSet& o) const {
    check_same(o);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (rows_[i].intersects(o.rows_[i])) return true;
    return false;
  }
  VecSet set_union(const VecSet& o) const {
    check_same(o);
    VecSet r = *this;
    for (std::size_t i = 0; i < rows_.size(); ++i) r.rows_[i] |= o.rows_[i];
    return r;
  }

  /// OR of this set translated by y into `out`.
  void or_translated_into(VecSet& out, const Point& y) const {
    if (n_ == 0) {
      out.rows_[0] |= rows_[0];
      return;
    }
    const std::size_t nrows = rows_.size();
    for (std::size_t r = 0; r < nrows; ++r) {
      if (rows_[r].none()) continue;
      rows_[r].or_rotated_into(out.rows_[shift_row(r, y)], y[0]);
    }
  }

  VecSet translated(const Point& y) const {
    VecSet out(p_, n_);
    or_translated_into(out, y);
    return out;
  }

  bool operator==(const VecSet& o) const noexcept { return p_ == o.p_ && n_ == o.n_ && rows_ == o.rows_; }

  void check_same(const VecSet& o) const {
    if (p_ != o.p_ || n_ != o.n_) throw ParameterError("shape mismatch: sets live in different spaces");
  }

  /// Lowercase hex of the packed index-order bitstream, 64-bit words little-endian (word 0 first).
  std::string hex_mask() const {
    std::vector<std::uint64_t> words((points_ + 63) / 64, 0);
    for_each_index([&](std::uint64_t i) { words[i / 64] |= std::uint64_t{1} << (i % 64); });
    std::ostringstream os;
    os << std::hex << std::setfill('0');
    for (auto w : words) os << std::setw(16) << w;
    return os.str();
  }

 private:
  std::size_t shift_row(std::size_t r, const Point& y) const {
    std::size_t out = 0, mul = 1;
    for (unsigned i = 1; i < n_; ++i) {
      const Residue d = static_cast<Residue>(r % p_);
      r /= p_;
      out += mod_add(d, y[i], p_) * mul;
      mul *= p_;
    }
    return out;
  }

  Residue p_;
  unsigned n_;
  std::uint64_t points_ = 1;
  std::vector<BitRow> rows_;
};

// ---------------------------------------------------------------------------
// Group arithmetic

inline VecSet vsumset(const VecSet& a, const VecSet& b) {
  a.check_same(b);
  VecSet out(a.modulus(), a.dim());
  const VecSet& big = a.size() >= b.size() ? a : b;
  const VecSet& small = a.size() >= b.size() ? b : a;
  small.for_each_index([&](std::uint64_t i) { big.or_translated_into(out, small.point_of(i)); });
  return out;
}

inline VecSet vhfold(const VecSet& a, unsigned h) {
  if (h == 0) throw ParameterError("h must be positive");
  VecSet r = a;
  for (unsigned i = 1; i < h; ++i) r = vsumset(r, a);
  return r;
}

inline bool is_kl_sumfree(const VecSet& a, unsigned k, unsigned l) {
  require_k_gt_l(k, l);
  if (a.empty()) throw ParameterError("(k,ℓ)-sum-freeness is defined for nonempty sets");
  VecSet acc = a, lfold = a;
  for (unsigned h = 2; h <= k; ++h) {
    acc = vsumset(acc, a);
    if (h == l) lfold = acc;
  }
  return !acc.intersects(lfold);
}

/// {M x : x ∈ A}.
inline VecSet apply_automorphism(const VecSet& a, const ModMatrix& m) {
  if (m.rows() != a.dim() || m.cols() != a.dim() || m.modulus() != a.modulus())
    throw ParameterError("matrix shape does not match the space");
  if (!m.invertible()) throw ParameterError("not an automorphism");
  VecSet out(a.modulus(), a.dim());
  a.for_each_index([&](std::uint64_t i) { out.insert(m.apply(a.point_of(i))); });
  return out;
}

// ---------------------------------------------------------------------------
// Decompositions

/// (v, K): v ∉ K, K given by a basis of n-1 vectors. Every x = i v + Σ y_j basis_j uniquely.
struct Decomposition {
  Point v;
  std::vector<Point> basis;

  /// Columns [v | basis]; invertible iff the decomposition is valid.
  ModMatrix frame(Residue p) const {
    std::vector<std::vector<Residue>> cols;
    cols.push_back(v);
    for (const auto& b : basis) cols.push_back(b);
    return ModMatrix::from_columns(p, cols);
  }

  void validate(Residue p, unsigned n) const {
    if (v.size() != n || basis.size() + 1 != n) throw ParameterError("invalid decomposition: wrong shape");
    for (const auto& b : basis)
      if (b.size() != n) throw ParameterError("invalid decomposition: wrong shape");
    if (!frame(p).invertible()) throw ParameterError("invalid decomposition: v ∪ basis(K) is dependent");
  }

  /// Image under an automorphism: (Mv, MK).
  Decomposition mapped(const ModMatrix& m) const {
    Decomposition d{m.apply(v), {}};
    for (const auto& b : basis) d.basis.push_back(m.apply(b));
    return d;
  }

  bool operator==(const Decomposition&) const = default;
};

/// Normal-vector indexed hyperplanes: for each nonzero t with first nonzero coordinate 1
/// (coordinates read from x_0), K = ker<t,.> and v = e_i for the first i with t_i ≠ 0.
/// Sorted by index(t). For n = 2 these are the p+1 lines; the first is the natural axis.
struct Hyperplane {
  Point normal;
  Decomposition decomposition;
};

inline std::vector<Hyperplane> hyperplane_decompositions(Residue p, unsigned n) {
  require_prime(p);
  if (n == 0) throw ParameterError("dimension must be positive");
  const std::uint64_t total = checked_power(p, n, kMaxPoints);
  std::vector<Hyperplane> out;
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    Point t(n);
    std::uint64_t r = idx;
    for (unsigned i = 0; i < n; ++i) {
      t[i] = static_cast<Residue>(r % p);
      r /= p;
    }
    unsigned lead = 0;
    while (t[lead] == 0) ++lead;
    if (t[lead] != 1) continue;
    ModMatrix row(p, 1, n);
    for (unsigned i = 0; i < n; ++i) row(0, i) = t[i];
    Decomposition d{Point(n, 0), row.kernel_basis()};
    d.v[lead] = 1;
    out.push_back({t, d});
  }
  return out;
}

/// The natural decomposition v = e_0, K = {0} × F_p^(n-1).
inline Decomposition natural_decomposition(unsigned n) {
  Decomposition d{Point(n, 0), {}};
  if (n) d.v[0] = 1;
  for (unsigned i = 1; i < n; ++i) {
    Point b(n, 0);
    b[i] = 1;
    d.basis.push_back(b);
  }
  return d;
}

/// Exact β_i = |B_i| / p^(n-2), kept as numerator/denominator.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio& a, const Ratio& b) {
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
  }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    const __int128 l = static_cast<__int128>(a.num) * b.den;
    const __int128 r = static_cast<__int128>(b.num) * a.den;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
};

/// Parts A_i = (A - i v) ∩ K in K-coordinates, support, weight and the sorted β-profile.
struct DecompProfile {
  Residue p = 0;
  unsigned n = 0;
  Decomposition decomposition;
  std::vector<VecSet> parts;          // indexed by i ∈ Z_p
  ZpSet support{2};
  std::size_t weight = 0;
  std::vector<Residue> order;         // b_1..b_p (0-based here), |A_{b}| non-increasing, ties by residue
  std::vector<std::uint64_t> sizes;   // |B_1| ≥ ... ≥ |B_p|

  std::size_t total() const {
    std::size_t s = 0;
    for (auto x : sizes) s += x;
    return s;
  }
  std::uint64_t part_size(Residue i) const { return parts.at(i).size(); }
  std::uint64_t max_part() const { return sizes.empty() ? 0 : sizes.front(); }

  /// β_i for 1-based i. For n = 1 the value is |B_i|·p (denominator p^-1 cleared).
  Ratio beta(std::size_t i) const {
    const std::uint64_t b = sizes.at(i - 1);
    if (n >= 2) return Ratio{b, checked_power(p, n - 2)};
    return Ratio{b * p, 1};
  }

  /// C_i = {b_1, ..., b_i} for 1-based i.
  ZpSet prefix(std::size_t i) const {
    ZpSet c(p);
    for (std::size_t j = 0; j < i && j < order.size(); ++j) c.insert(order[j]);
    return c;
  }
};

inline DecompProfile decompose(const VecSet& a, const Decomposition& d) {
  const Residue p = a.modulus();
  const unsigned n = a.dim();
  if (n == 0) throw ParameterError("cannot decompose the zero space");
  d.validate(p, n);
  const auto inv = d.frame(p).inverse();
  DecompProfile prof;
  prof.p = p;
  prof.n = n;
  prof.decomposition = d;
  prof.parts.assign(p, VecSet(p, n - 1));
  a.for_each_index([&](std::uint64_t idx) {
    const Point c = inv->apply(a.point_of(idx));
    Point y(c.begin() + 1, c.end());
    prof.parts[c[0]].insert(y);
  });
  prof.support = ZpSet(p);
  std::vector<std::pair<std::uint64_t, Residue>> keyed;
  for (Residue i = 0; i < p; ++i) {
    const auto sz = prof.parts[i].size();
    if (sz) prof.support.insert(i);
    keyed.emplace_back(sz, i);
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  for (const auto& [sz, i] : keyed) {
    prof.order.push_back(i);
    prof.sizes.push_back(sz);
  }
  prof.weight = prof.support.size();
  return prof;
}

// ---------------------------------------------------------------------------
// Stabilizers and Kneser

/// Sym(S) = {g : g + S = S}. For S = ∅ the whole space is returned.
inline VecSet sym_group(const VecSet& s) {
  const Residue p = s.modulus();
  const unsigned n = s.dim();
  if (s.empty()) return VecSet::full(p, n);
  const Point s0 = s.point_of([&] {
    std::uint64_t first = 0;
    bool got = false;
    s.for_each_index([&](std::uint64_t i) {
      if (!got) {
        first = i;
        got = true;
      }
    });
    return first;
  }());
  VecSet h(p, n);
  s.for_each_index([&](std::uint64_t i) {
    Point g = s.point_of(i);
    for (unsigned j = 0; j < n; ++j) g[j] = mod_sub(g[j], s0[j], p);
    if (s.translated(g) == s) h.insert(g);
  });
  return h;
}

struct KneserGap {
  std::size_t lhs = 0;  // |A_1 + ... + A_k|
  std::size_t rhs = 0;  // Σ |A_i + H| - (k-1)|H|, clamped at 0
  VecSet stabilizer{2, 1};
  bool holds() const { return lhs >= rhs; }
};

inline KneserGap kneser_gap(const std::vector<VecSet>& sets) {
  if (sets.empty()) throw ParameterError("kneser_gap needs at least one set");
  VecSet total = sets.front();
  for (std::size_t i = 1; i < sets.size(); ++i) total = vsumset(total, sets[i]);
  for (const auto& s : sets)
    if (s.empty()) throw ParameterError("kneser_gap needs nonempty sets");
  KneserGap g;
  g.stabilizer = sym_group(total);
  g.lhs = total.size();
  std::int64_t rhs = 0;
  for (const auto& s : sets) rhs += static_cast<std::int64_t>(vsumset(s, g.stabilizer).size());
  rhs -= static_cast<std::int64_t>(sets.size() - 1) * static_cast<std::int64_t>(g.stabilizer.size());
  g.rhs = rhs < 0 ? 0 : static_cast<std::size_t>(rhs);
  return g;
}

/// Smallest s ≠ 0 with s·Supp(A) ⊆ Supp(B). Requires max part of A = p^(n-1) and ω(B) < p,
/// the hypotheses under which containment up to isomorphism forces such an s.
inline std::optional<Residue> support_contained(const DecompProfile& a, const DecompProfile& b) {
  if (a.p != b.p || a.n != b.n) throw ParameterError("profiles of different spaces");
  const std::uint64_t layer = checked_power(a.p, a.n - 1);
  if (a.max_part() != layer)
    throw HypothesisError("support criterion needs a full part in the first set (max |A_i| = p^(n-1))");
  if (b.weight >= b.p) throw HypothesisError("support criterion needs ω(B) < p");
  for (Residue s = 1; s < a.p; ++s)
    if (dilate(a.support, s).is_subset_of(b.support)) return s;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Literals: `p=<prime>;n=<dim>;{(a,b,...),...}`

inline VecSet parse_vec_set(std::string_view text) {
  const std::string s = detail::strip_spaces(text);
  const auto parts = detail::split(s, ';');
  if (parts.size() == 2) return VecSet::from_zp(parse_zp_set(s));
  if (parts.size() != 3) throw ParameterError("vector set literal must be p=<prime>;n=<dim>;{...}");
  const Residue p = detail::parse_modulus_field(parts[0]);
  if (parts[1].substr(0, 2) != "n=") throw ParameterError("expected n=<dim>");
  const auto n = detail::parse_uint(parts[1].substr(2), "dimension");
  if (n < 1 || n > 64) throw ParameterError("dimension out of range");
  VecSet out(p, static_cast<unsigned>(n));
  std::string_view body = parts[2];
  if (body.size() < 2 || body.front() != '{' || body.back() != '}') throw ParameterError("set body must be {...}");
  body = body.substr(1, body.size() - 2);
  std::size_t pos = 0;
  while (pos < body.size()) {
    if (body[pos] == ',') {
      ++pos;
      continue;
    }
    if (body[pos] != '(') throw ParameterError("expected '(' in point list");
    const auto close = body.find(')', pos);
    if (close == std::string_view::npos) throw ParameterError("unterminated point");
    Point x;
    for (auto tok : detail::split(body.substr(pos + 1, close - pos - 1), ',')) {
      const auto v = detail::parse_uint(tok, "coordinate");
      if (v >= p) throw ParameterError("coordinate out of range");
      x.push_back(static_cast<Residue>(v));
    }
    if (x.size() != n) throw ParameterError("point has wrong dimension");
    if (out.contains(x)) throw ParameterError("duplicate point");
    out.insert(x);
    pos = close + 1;
  }
  return out;
}

inline std::string to_literal(const VecSet& a) {
  if (a.dim() == 1) return to_literal(a.to_zp());
  std::ostringstream os;
  os << "p=" << a.modulus() << ";n=" << a.dim() << ";{";
  bool first = true;
  a.for_each_index([&](std::uint64_t i) {
    if (!first) os << ",";
    first = false;
    os << "(";
    const Point x = a.point_of(i);
    for (std::size_t j = 0; j < x.size(); ++j) os << (j ? "," : "") << x[j];
    os << ")";
  });
  os << "}";
  return os.str();
}

}  // namespace klsf
