#pragma once

// Subsets of Z_p: sumsets, dilations, AP/interval analysis and (k,l)-sum-free tests.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "klsf/bit_row.hpp"
#include "klsf/errors.hpp"
#include "klsf/modular.hpp"

namespace klsf {

/// A subset of Z_p stored as a p-bit mask. Value type; immutable in all free operations.
class ZpSet {
 public:
  explicit ZpSet(Residue p) : p_(p), bits_(p) { require_prime(p); }

  ZpSet(Residue p, std::initializer_list<Residue> elems) : ZpSet(p) {
    for (Residue x : elems) insert_checked(x);
  }

  static ZpSet from_elements(Residue p, std::span<const Residue> elems) {
    ZpSet s(p);
    for (Residue x : elems) s.insert_checked(x);
    return s;
  }

  /// Cyclic interval [a, b] = {a, a+1, ..., b}.
  static ZpSet interval(Residue p, std::int64_t a, std::int64_t b) {
    ZpSet s(p);
    const Residue start = mod_reduce(a, p);
    const Residue len = mod_sub(mod_reduce(b, p), start, p) + 1;
    for (Residue i = 0; i < len; ++i) s.insert(mod_add(start, i, p));
    return s;
  }

  /// {start, start+diff, ..., start+(length-1)diff}.
  static ZpSet progression(Residue p, std::int64_t start, std::int64_t diff, std::size_t length) {
    ZpSet s(p);
    const Residue st = mod_reduce(start, p), d = mod_reduce(diff, p);
    Residue x = st;
    for (std::size_t i = 0; i < length; ++i) {
      s.insert(x);
      x = mod_add(x, d, p);
    }
    return s;
  }

  static ZpSet full(Residue p) {
    ZpSet s(p);
    s.bits_.fill();
    return s;
  }

  Residue modulus() const noexcept { return p_; }
  std::size_t size() const noexcept { return bits_.count(); }
  bool empty() const noexcept { return bits_.none(); }
  bool contains(Residue x) const noexcept { return x < p_ && bits_.test(x); }
  void insert(Residue x) { bits_.set(x % p_); }
  void erase(Residue x) { bits_.reset(x % p_); }
  const BitRow& bits() const noexcept { return bits_; }
  BitRow& mutable_bits() noexcept { return bits_; }

  std::vector<Residue> elements() const {
    std::vector<Residue> v;
    v.reserve(size());
    bits_.for_each([&](std::size_t i) { v.push_back(static_cast<Residue>(i)); });
    return v;
  }

  ZpSet complement() const {
    ZpSet c = *this;
    c.bits_.flip_all();
    return c;
  }

  bool is_subset_of(const ZpSet& o) const {
    check_same(o);
    return bits_.is_subset_of(o.bits_);
  }
  bool intersects(const ZpSet& o) const {
    check_same(o);
    return bits_.intersects(o.bits_);
  }
  ZpSet intersection(const ZpSet& o) const {
    check_same(o);
    ZpSet r = *this;
    r.bits_ &= o.bits_;
    return r;
  }
  ZpSet set_union(const ZpSet& o) const {
    check_same(o);
    ZpSet r = *this;
    r.bits_ |= o.bits_;
    return r;
  }

  /// {x + t}.
  ZpSet translated(std::int64_t t) const {
    ZpSet r(p_, kNoCheck);
    bits_.or_rotated_into(r.bits_, mod_reduce(t, p_));
    return r;
  }

  bool operator==(const ZpSet& o) const noexcept { return p_ == o.p_ && bits_ == o.bits_; }

  /// Lexicographic order on the increasing element sequences (modulus first).
  std::strong_ordering operator<=>(const ZpSet& o) const {
    if (p_ != o.p_) return p_ <=> o.p_;
    const auto a = elements(), b = o.elements();
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

  void check_same(const ZpSet& o) const {
    if (p_ != o.p_) throw ParameterError("incompatible moduli");
  }

 private:
  struct NoCheck {};
  static constexpr NoCheck kNoCheck{};
  ZpSet(Residue p, NoCheck) : p_(p), bits_(p) {}

  void insert_checked(Residue x) {
    if (x >= p_) throw ParameterError("residue " + std::to_string(x) + " out of range for p=" + std::to_string(p_));
    bits_.set(x);
  }

  Residue p_;
  BitRow bits_;
};

// ---------------------------------------------------------------------------
// Sumsets and dilations

/// A + B via shifted-mask OR over the smaller operand.
inline ZpSet sumset(const ZpSet& a, const ZpSet& b) {
  a.check_same(b);
  ZpSet r(a.modulus());
  if (a.empty() || b.empty()) return r;
  const ZpSet& big = a.size() >= b.size() ? a : b;
  const ZpSet& small = a.size() >= b.size() ? b : a;
  small.bits().for_each([&](std::size_t t) { big.bits().or_rotated_into(r.mutable_bits(), t); });
  return r;
}

/// hA = (h-1)A + A.
inline ZpSet hfold(const ZpSet& a, unsigned h) {
  if (h == 0) throw ParameterError("h must be positive");
  ZpSet r = a;
  for (unsigned i = 1; i < h; ++i) r = sumset(r, a);
  return r;
}

/// c . A = {c x}.
inline ZpSet dilate(const ZpSet& a, std::int64_t c) {
  const Residue p = a.modulus();
  const Residue cc = mod_reduce(c, p);
  if (cc == 0) throw ParameterError("dilation by zero");
  ZpSet r(p);
  a.bits().for_each([&](std::size_t x) { r.insert(mod_mul(static_cast<Residue>(x), cc, p)); });
  return r;
}

inline void require_k_gt_l(unsigned k, unsigned l) {
  if (l < 1 || k <= l) throw ParameterError("require k > ℓ ≥ 1");
}

/// kA ∩ lA = ∅.
inline bool is_kl_sumfree(const ZpSet& a, unsigned k, unsigned l) {
  require_k_gt_l(k, l);
  if (a.empty()) throw ParameterError("(k,ℓ)-sum-freeness is defined for nonempty sets");
  ZpSet acc = a;
  ZpSet lfold = a;
  for (unsigned h = 2; h <= k; ++h) {
    acc = sumset(acc, a);
    if (h == l) lfold = acc;
  }
  return !acc.intersects(lfold);
}

// ---------------------------------------------------------------------------
// e_d statistics and arithmetic progressions

/// e_d(A) for d = 1..(p-1)/2; index 0 unused.
struct EdProfile {
  Residue modulus = 0;
  std::vector<std::size_t> counts;

  std::size_t e(Residue d) const { return counts.at(d); }
  std::size_t max_diff() const { return counts.empty() ? 0 : counts.size() - 1; }

  /// The multiset E(A), sorted.
  std::vector<std::size_t> multiset() const {
    std::vector<std::size_t> v(counts.begin() + (counts.empty() ? 0 : 1), counts.end());
    std::sort(v.begin(), v.end());
    return v;
  }
  bool operator==(const EdProfile&) const = default;
};

/// Number of ordered pairs (x, y), x ∈ A, y ∉ A, with y = x ± d.
inline EdProfile ed_profile(const ZpSet& a) {
  const Residue p = a.modulus();
  const Residue half = (p - 1) / 2;
  EdProfile e{p, std::vector<std::size_t>(half + 1, 0)};
  const std::size_t n = a.size();
  for (Residue d = 1; d <= half; ++d) {
    ZpSet shifted = a.translated(d);
    const std::size_t overlap = shifted.intersection(a).size();
    e.counts[d] = 2 * (n - overlap);
  }
  return e;
}

/// Common differences d ∈ [1,(p-1)/2] for which A is an AP (e_d = 2).
/// Sizes outside [2, p-2] follow fixed conventions: size 0 → none; 1, p-1, p → all.
inline std::vector<Residue> is_ap(const ZpSet& a) {
  const Residue p = a.modulus();
  const std::size_t n = a.size();
  const Residue half = (p - 1) / 2;
  std::vector<Residue> diffs;
  if (n == 0) return diffs;
  if (n == 1 || n + 1 >= p) {
    for (Residue d = 1; d <= half; ++d) diffs.push_back(d);
    return diffs;
  }
  const EdProfile e = ed_profile(a);
  for (Residue d = 1; d <= half; ++d)
    if (e.counts[d] == 2) diffs.push_back(d);
  return diffs;
}

/// AP {start, start+diff, ..., start+(length-1)diff} covering a set.
struct ApCover {
  Residue start = 0;
  Residue diff = 1;
  std::size_t length = 0;

  ZpSet as_set(Residue p) const { return ZpSet::progression(p, start, diff, length); }
  bool operator==(const ApCover&) const = default;
};

/// Shortest cyclic interval containing A; ties by smallest start residue.
inline ApCover min_interval_cover(const ZpSet& a) {
  if (a.empty()) throw ParameterError("empty set has no cover");
  const Residue p = a.modulus();
  const auto el = a.elements();
  if (el.size() == p) return ApCover{0, 1, p};
  // The cover starting at el[i+1] skips the gap between el[i] and el[i+1].
  std::size_t best_gap = 0;
  Residue best_start = 0;
  bool have = false;
  for (std::size_t i = 0; i < el.size(); ++i) {
    const Residue cur = el[i];
    const Residue nxt = el[(i + 1) % el.size()];
    const std::size_t gap = el.size() == 1 ? p - 1 : (mod_sub(nxt, cur, p) + p - 1) % p;
    if (!have || gap > best_gap || (gap == best_gap && nxt < best_start)) {
      best_gap = gap;
      best_start = nxt;
      have = true;
    }
  }
  return ApCover{best_start, 1, p - best_gap};
}

/// Shortest AP containing A over all differences d ∈ [1,(p-1)/2]; ties by smallest d.
inline ApCover min_ap_cover(const ZpSet& a) {
  if (a.empty()) throw ParameterError("empty set has no cover");
  const Residue p = a.modulus();
  const Residue half = std::max<Residue>(1, (p - 1) / 2);
  ApCover best{};
  bool have = false;
  for (Residue d = 1; d <= half; ++d) {
    const Residue dinv = mod_inv(d, p);
    const ApCover c = min_interval_cover(dilate(a, dinv));
    if (!have || c.length < best.length) {
      best = ApCover{mod_mul(c.start, d, p), d, c.length};
      have = true;
    }
  }
  return best;
}

/// Lengths of maximal runs of non-members strictly inside the cover, bounded by members on both sides,
/// listed in the cover's order.
inline std::vector<std::size_t> holes(const ZpSet& a, const ApCover& cover) {
  const Residue p = a.modulus();
  if (cover.length > p || cover.diff % p == 0) throw ParameterError("invalid cover");
  const ZpSet cs = cover.as_set(p);
  if (!a.is_subset_of(cs)) throw ParameterError("cover does not contain the set");
  std::vector<std::size_t> out;
  bool seen_member = false;
  std::size_t run = 0;
  Residue x = cover.start % p;
  for (std::size_t i = 0; i < cover.length; ++i) {
    if (a.contains(x)) {
      if (seen_member && run > 0) out.push_back(run);
      seen_member = true;
      run = 0;
    } else if (seen_member) {
      ++run;
    }
    x = mod_add(x, cover.diff % p, p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// (k,l)-sum equations

/// r_1 + ... + r_k = s_1 + ... + s_l, both sides sorted.
struct KlSum {
  std::vector<Residue> left;
  std::vector<Residue> right;

  std::size_t distinct_values() const {
    std::vector<Residue> all = left;
    all.insert(all.end(), right.begin(), right.end());
    std::sort(all.begin(), all.end());
    return static_cast<std::size_t>(std::unique(all.begin(), all.end()) - all.begin());
  }
  auto operator<=>(const KlSum&) const = default;
};

namespace detail {
template <class F>
void for_each_multiset(const std::vector<Residue>& pool, unsigned size, F&& f) {
  std::vector<std::size_t> idx(size, 0);
  if (pool.empty()) {
    if (size == 0) f(std::vector<Residue>{});
    return;
  }
  std::vector<Residue> cur(size);
  while (true) {
    for (unsigned i = 0; i < size; ++i) cur[i] = pool[idx[i]];
    f(cur);
    int pos = static_cast<int>(size) - 1;
    while (pos >= 0 && idx[pos] + 1 == pool.size()) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (unsigned j = pos + 1; j < size; ++j) idx[j] = idx[pos];
  }
}
}  // namespace detail

/// Every (k,l)-sum with entries in c using at most `max_distinct` distinct values,
/// sorted lexicographically by (left, right).
inline std::vector<KlSum> find_kl_sums(const ZpSet& c, unsigned k, unsigned l, unsigned max_distinct) {
  require_k_gt_l(k, l);
  if (max_distinct < 1) throw ParameterError("max_distinct must be positive");
  const Residue p = c.modulus();
  const auto pool = c.elements();
  std::map<Residue, std::vector<std::vector<Residue>>> right_by_sum;
  detail::for_each_multiset(pool, l, [&](const std::vector<Residue>& r) {
    std::uint64_t s = 0;
    for (Residue x : r) s += x;
    right_by_sum[static_cast<Residue>(s % p)].push_back(r);
  });
  std::vector<KlSum> out;
  detail::for_each_multiset(pool, k, [&](const std::vector<Residue>& left) {
    std::uint64_t s = 0;
    for (Residue x : left) s += x;
    auto it = right_by_sum.find(static_cast<Residue>(s % p));
    if (it == right_by_sum.end()) return;
    for (const auto& r : it->second) {
      KlSum eq{left, r};
      if (eq.distinct_values() <= max_distinct) out.push_back(std::move(eq));
    }
  });
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Text literals: `p=<prime>;{e1,e2,...}` and `p=<prime>;[a,b]`

namespace detail {
inline std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  return out;
}

inline std::uint64_t parse_uint(std::string_view s, const char* what) {
  if (s.empty()) throw ParameterError(std::string("missing ") + what);
  std::uint64_t v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw ParameterError(std::string("malformed ") + what + ": '" + std::string(s) + "'");
    v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    if (v > (std::uint64_t{1} << 40)) throw ParameterError(std::string(what) + " too large");
  }
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

/// Parses "p=<n>" returning n.
inline Residue parse_modulus_field(std::string_view field) {
  if (field.substr(0, 2) != "p=") throw ParameterError("set literal must start with 'p='");
  const auto p = parse_uint(field.substr(2), "modulus");
  require_prime(p);
  return static_cast<Residue>(p);
}
}  // namespace detail

inline ZpSet parse_zp_set(std::string_view text) {
  const std::string s = detail::strip_spaces(text);
  const auto semi = s.find(';');
  if (semi == std::string::npos) throw ParameterError("set literal needs ';' after the modulus");
  const Residue p = detail::parse_modulus_field(std::string_view(s).substr(0, semi));
  std::string_view body = std::string_view(s).substr(semi + 1);
  if (body.size() < 2) throw ParameterError("malformed set body");
  if (body.front() == '[' && body.back() == ']') {
    const auto parts = detail::split(body.substr(1, body.size() - 2), ',');
    if (parts.size() != 2) throw ParameterError("interval literal needs exactly two endpoints");
    const auto a = detail::parse_uint(parts[0], "residue"), b = detail::parse_uint(parts[1], "residue");
    if (a >= p || b >= p) throw ParameterError("residue out of range");
    return ZpSet::interval(p, static_cast<std::int64_t>(a), static_cast<std::int64_t>(b));
  }
  if (body.front() != '{' || body.back() != '}') throw ParameterError("set body must be {...} or [a,b]");
  ZpSet out(p);
  const std::string_view inner = body.substr(1, body.size() - 2);
  if (inner.empty()) return out;
  for (auto tok : detail::split(inner, ',')) {
    const auto x = detail::parse_uint(tok, "residue");
    if (x >= p) throw ParameterError("residue " + std::to_string(x) + " out of range for p=" + std::to_string(p));
    if (out.contains(static_cast<Residue>(x))) throw ParameterError("duplicate residue " + std::to_string(x));
    out.insert(static_cast<Residue>(x));
  }
  return out;
}

/// True when A is a cyclic interval (nonempty, proper).
inline bool is_interval(const ZpSet& a) {
  if (a.empty() || a.size() == a.modulus()) return false;
  return min_interval_cover(a).length == a.size();
}

/// Interval shorthand when A is a proper cyclic interval of length ≥ 2, explicit braces otherwise.
inline std::string to_literal(const ZpSet& a) {
  std::ostringstream os;
  os << "p=" << a.modulus() << ";";
  if (a.size() >= 2 && is_interval(a)) {
    const ApCover c = min_interval_cover(a);
    os << "[" << c.start << "," << mod_add(c.start, static_cast<Residue>(c.length - 1), a.modulus()) << "]";
    return os.str();
  }
  os << "{";
  bool first = true;
  for (Residue x : a.elements()) {
    if (!first) os << ",";
    os << x;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace klsf
