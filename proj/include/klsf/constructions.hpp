#pragma once

// Generators for the extremal cuboids, types 1-5 and the (2,1) second-level structure,
// plus the exact triviality test and the non-isomorphism certificates between types.

#include <optional>
#include <string>
#include <vector>

#include "klsf/errors.hpp"
#include "klsf/modular.hpp"
#include "klsf/params.hpp"
#include "klsf/vec_set.hpp"
#include "klsf/zp_set.hpp"

namespace klsf {

// ---------------------------------------------------------------------------
// Anchors

/// a_j = -(km+1+j)(k-l)^{-1}.
inline Residue cuboid_start(const Params& q, unsigned j) {
  const auto num = mod_neg(mod_reduce(std::int64_t{q.k} * q.m() + 1 + j, q.p), q.p);
  return mod_mul(num, mod_inv(q.k - q.l, q.p), q.p);
}

/// The n = 1 slices [a_j, a_j+m] for all j in range.
inline std::vector<ZpSet> extremal_intervals(const Params& q) {
  if (!q.cuboid_range()) throw ParameterError("extremal cuboids need λ ≤ k+ℓ-3");
  std::vector<ZpSet> out;
  for (unsigned j = 0; j < q.extremal_count(); ++j) {
    const Residue a = cuboid_start(q, j);
    out.push_back(ZpSet::interval(q.p, a, std::int64_t{a} + q.m()));
  }
  return out;
}

/// Admissible values of la - k(a+m-1): [1,l] ∪ [λ+l+2, k].
inline std::vector<unsigned> type1_offsets(const Params& q) {
  std::vector<unsigned> g;
  for (unsigned x = 1; x <= q.l; ++x) g.push_back(x);
  for (unsigned x = q.lambda() + q.l + 2; x <= q.k; ++x) g.push_back(x);
  return g;
}

/// a with la - k(a+m-1) = g, i.e. a = (k(m-1)+g)(l-k)^{-1}.
inline Residue type1_start(const Params& q, unsigned g) {
  const auto num = mod_reduce(std::int64_t{q.k} * (q.m() - 1) + g, q.p);
  return mod_mul(num, mod_inv(mod_sub(q.l, q.k % q.p, q.p), q.p), q.p);
}

inline std::vector<Residue> type1_starts(const Params& q) {
  std::vector<Residue> out;
  for (auto g : type1_offsets(q)) out.push_back(type1_start(q, g));
  return out;
}

/// mk(l-k)^{-1}.
inline Residue type2_start(const Params& q) {
  return mod_mul(mod_reduce(std::int64_t{q.m()} * q.k, q.p), mod_inv(mod_sub(q.l, q.k % q.p, q.p), q.p), q.p);
}

/// (lm+k-1)(k-l)^{-1}.
inline Residue type3_start(const Params& q) {
  return mod_mul(mod_reduce(std::int64_t{q.l} * q.m() + q.k - 1, q.p), mod_inv(q.k - q.l, q.p), q.p);
}

/// (m+2)/2.
inline Residue type5_start(const Params& q) { return mod_mul(mod_reduce(q.m() + 2, q.p), mod_inv(2, q.p), q.p); }

// ---------------------------------------------------------------------------
// Layer helpers

/// Span of `basis` inside F_p^d (d = dim of the vectors; an empty basis gives {0}).
inline VecSet span_of(Residue p, unsigned d, const std::vector<Point>& basis) {
  VecSet out(p, d);
  out.insert(Point(d, 0));
  for (const auto& b : basis) {
    if (b.size() != d) throw ParameterError("subspace vector has wrong dimension");
    VecSet next = out;
    for (Residue c = 1; c < p; ++c) {
      Point shift(d);
      for (unsigned i = 0; i < d; ++i) shift[i] = mod_mul(b[i], c, p);
      out.or_translated_into(next, shift);
    }
    out = next;
  }
  return out;
}

/// X × F_p^(d - s) inside F_p^d, for X ⊂ F_p^s.
inline VecSet extend_layer(const VecSet& x, unsigned d) {
  const Residue p = x.modulus();
  const unsigned s = x.dim();
  if (s > d) throw ParameterError("layer dimension exceeds target");
  VecSet out(p, d);
  const std::uint64_t inner = checked_power(p, s), outer = checked_power(p, d - s);
  x.for_each_index([&](std::uint64_t i) {
    for (std::uint64_t z = 0; z < outer; ++z) out.insert_index(i + z * inner);
  });
  return out;
}

/// ∪ {i} × L_i in F_p^n, with L_i ⊂ F_p^(n-1) in the natural coordinates.
inline VecSet stack_layers(Residue p, unsigned n, const std::vector<std::pair<Residue, VecSet>>& layers) {
  VecSet out(p, n);
  for (const auto& [i, layer] : layers) {
    if (layer.dim() + 1 != n) throw ParameterError("layer dimension mismatch");
    layer.for_each_index([&](std::uint64_t y) { out.insert_index(i + p * y); });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cuboids

struct CuboidSpec {
  Params params;
  unsigned j = 0;

  Residue start() const { return cuboid_start(params, j); }
};

inline VecSet gen_cuboid(const CuboidSpec& spec) {
  const Params& q = spec.params;
  q.validate();
  if (!q.cuboid_range()) throw ParameterError("extremal cuboids need λ ≤ k+ℓ-3");
  if (spec.j >= q.extremal_count())
    throw ParameterError("j out of range: need j < " + std::to_string(q.extremal_count()));
  const Residue a = spec.start();
  VecSet out = VecSet::cylinder(ZpSet::interval(q.p, a, std::int64_t{a} + q.m()), q.n);
  if (out.size() != (q.m() + 1) * q.layer()) throw CheckFailure("cuboid has the wrong size");
  if (!is_kl_sumfree(out, q.k, q.l)) throw CheckFailure("cuboid failed its (k,ℓ)-sum-free check at " + q.to_string());
  return out;
}

// ---------------------------------------------------------------------------
// Types

enum class Structure { Type1 = 1, Type2, Type3, Type4, Type5, RZ };

inline std::string structure_name(Structure s) {
  switch (s) {
    case Structure::Type1: return "type1";
    case Structure::Type2: return "type2";
    case Structure::Type3: return "type3";
    case Structure::Type4: return "type4";
    case Structure::Type5: return "type5";
    case Structure::RZ: return "rz";
  }
  return "?";
}

inline Structure parse_structure(const std::string& s) {
  for (int i = 1; i <= 6; ++i)
    if (structure_name(static_cast<Structure>(i)) == s) return static_cast<Structure>(i);
  throw ParameterError("unknown structure '" + s + "'");
}

struct TypeSpec {
  Structure which = Structure::Type1;
  Params params;
  std::optional<Residue> start;  // type 1 only; defaults to the first admissible value
  std::vector<Point> subspace;   // types 2, 4: basis of V ⊂ F_p^(n-1)
  unsigned s = 0;                // type 5, RZ
  std::vector<Point> pset;       // type 5, RZ: P ⊂ F_p^s
};

struct Generated {
  VecSet set{2, 1};
  ZpSet support{2};
  DecompProfile profile;
  std::vector<std::string> flags;
};

namespace detail {

inline void require_m_at_least_2(const Params& q, const char* what) {
  if (q.m() < 2) throw ParameterError(std::string(what) + " needs m ≥ 2 for its layers to be distinct");
}

inline VecSet proper_subspace(const TypeSpec& spec, const char* what) {
  const Params& q = spec.params;
  const unsigned d = q.n - 1;
  VecSet v = span_of(q.p, d, spec.subspace);
  if (v.size() == q.layer()) throw ParameterError(std::string(what) + " requires V to be a proper subspace");
  return v;
}

inline VecSet subset_p(const TypeSpec& spec) {
  const Params& q = spec.params;
  if (spec.s > q.n - 1) throw ParameterError("s must lie in [0, n-1]");
  VecSet pset(q.p, spec.s);
  for (const auto& x : spec.pset) {
    if (x.size() != spec.s) throw ParameterError("P element has wrong dimension");
    for (auto c : x)
      if (c >= q.p) throw ParameterError("P coordinate out of range");
    pset.insert(x);
  }
  return pset;
}

inline bool contains_origin(const VecSet& s) { return !s.empty() && s.contains(Point(s.dim(), 0)); }

/// Layers shared by type 5 and the (2,1) structure, anchored at `base`:
/// (base-1, 0), base × (F^s∖P), [base+1, base+m-2] × F^s, base+m-1 × (F^s∖{0}), base+m × P.
inline VecSet punctured_chain(const Params& q, Residue base, unsigned s, const VecSet& pset) {
  const unsigned d = q.n - 1;
  const Residue p = q.p;
  const unsigned m = q.m();
  VecSet origin(p, s);
  origin.insert(Point(s, 0));
  VecSet full = VecSet::full(p, s);
  std::vector<std::pair<Residue, VecSet>> layers;
  auto at = [&](std::int64_t off) { return mod_reduce(std::int64_t{base} + off, p); };
  layers.emplace_back(at(-1), extend_layer(origin, d));
  layers.emplace_back(at(0), extend_layer(pset.complement(), d));
  for (unsigned i = 1; i + 2 <= m; ++i) layers.emplace_back(at(i), extend_layer(full, d));
  layers.emplace_back(at(std::int64_t{m} - 1), extend_layer(origin.complement(), d));
  layers.emplace_back(at(m), extend_layer(pset, d));
  return stack_layers(p, q.n, layers);
}

}  // namespace detail

inline Generated gen_type(const TypeSpec& spec) {
  const Params& q = spec.params;
  q.validate();
  const Residue p = q.p;
  const unsigned m = q.m(), n = q.n;
  if (n == 0) throw ParameterError("dimension must be positive");
  const unsigned d = n - 1;
  const VecSet full = VecSet::full(p, d);
  Generated g;
  VecSet out(p, n);
  switch (spec.which) {
    case Structure::Type1: {
      const auto starts = type1_starts(q);
      if (starts.empty()) throw ParameterError("type 1 has no admissible start for " + q.to_string());
      const Residue a = spec.start.value_or(starts.front());
      if (a >= p) throw ParameterError("type 1 start out of range");
      if (std::find(starts.begin(), starts.end(), a) == starts.end())
        throw ParameterError("type 1 requires ℓa-k(a+m-1) ∈ [1,ℓ] ∪ [λ+ℓ+2,k]");
      out = VecSet::cylinder(ZpSet::interval(p, a, std::int64_t{a} + m - 1), n);
      break;
    }
    case Structure::Type2: {
      if (q.l != 1) throw ParameterError("type 2 requires ℓ = 1");
      if (n < 2) throw ParameterError("type 2 requires n ≥ 2");
      const VecSet v = detail::proper_subspace(spec, "type 2");
      const Residue a = type2_start(q);
      std::vector<std::pair<Residue, VecSet>> layers;
      layers.emplace_back(a, v.complement());
      for (unsigned i = 1; i < m; ++i) layers.emplace_back(mod_reduce(std::int64_t{a} + i, p), full);
      layers.emplace_back(mod_reduce(std::int64_t{a} + m, p), v);
      out = stack_layers(p, n, layers);
      break;
    }
    case Structure::Type3: {
      if (q.kl() < 5 || q.lambda() + 4 != q.kl()) throw ParameterError("type 3 requires k+ℓ ≥ 5 and λ = k+ℓ-4");
      detail::require_m_at_least_2(q, "type 3");
      const Residue a = type3_start(q);
      ZpSet base = ZpSet::interval(p, std::int64_t{a} - 1, std::int64_t{a} + m);
      base.erase(a);
      base.erase(mod_reduce(std::int64_t{a} + m - 1, p));
      out = VecSet::cylinder(base, n);
      break;
    }
    case Structure::Type4: {
      if (q.kl() != 5 || q.lambda() != 1) throw ParameterError("type 4 requires (k+ℓ, λ) = (5, 1)");
      if (n < 2) throw ParameterError("type 4 requires n ≥ 2");
      detail::require_m_at_least_2(q, "type 4");
      const VecSet v = detail::proper_subspace(spec, "type 4");
      const Residue a = type3_start(q);
      auto at = [&](std::int64_t off) { return mod_reduce(std::int64_t{a} + off, p); };
      std::vector<std::pair<Residue, VecSet>> layers;
      layers.emplace_back(at(-1), v);
      layers.emplace_back(at(m), v);
      layers.emplace_back(at(0), v.complement());
      layers.emplace_back(at(std::int64_t{m} - 1), v.complement());
      for (unsigned i = 1; i + 2 <= m; ++i) layers.emplace_back(at(i), full);
      out = stack_layers(p, n, layers);
      break;
    }
    case Structure::Type5: {
      if (q.k != 3 || q.l != 1 || q.lambda() != 1) throw ParameterError("type 5 requires (k, ℓ, λ) = (3, 1, 1)");
      detail::require_m_at_least_2(q, "type 5");
      if (spec.s == 0) throw ParameterError("type 5 with s = 0 is empty: P ⊂ {0} nonempty forces 0 ∈ 3P");
      const VecSet pset = detail::subset_p(spec);
      if (pset.empty()) throw ParameterError("type 5 requires P nonempty");
      if (detail::contains_origin(vhfold(pset, 3))) throw ParameterError("type 5 requires 0∉3P");
      out = detail::punctured_chain(q, type5_start(q), spec.s, pset);
      break;
    }
    case Structure::RZ: {
      if (q.k != 2 || q.l != 1) throw ParameterError("the second-level (2,1) structure requires (k, ℓ) = (2, 1)");
      if (q.lambda() != 0) throw ParameterError("the second-level (2,1) structure requires p = 3m+2");
      detail::require_m_at_least_2(q, "the second-level (2,1) structure");
      const VecSet pset = detail::subset_p(spec);
      if (!pset.empty() && detail::contains_origin(vsumset(pset, pset)))
        throw ParameterError("the second-level (2,1) structure requires 0∉P+P");
      if (spec.s == 0) {
        if (!pset.empty()) throw ParameterError("s = 0 admits only P = ∅");
        g.flags.push_back("s=0 accepted with P=∅ (range of s ambiguous in the source statement)");
      }
      // base = m+1 puts (m, 0) at base-1 and P at 2m+1.
      out = detail::punctured_chain(q, mod_reduce(std::int64_t{m} + 1, p), spec.s, pset);
      break;
    }
  }
  const auto expected = std::uint64_t{m} * q.layer();
  if (out.size() != expected)
    throw CheckFailure(structure_name(spec.which) + " has size " + std::to_string(out.size()) + ", expected " +
                       std::to_string(expected));
  if (!is_kl_sumfree(out, q.k, q.l))
    throw CheckFailure(structure_name(spec.which) + " failed its (k,ℓ)-sum-free check at " + q.to_string());
  g.profile = decompose(out, natural_decomposition(n));
  g.support = g.profile.support;
  g.set = std::move(out);
  return g;
}

// ---------------------------------------------------------------------------
// Triviality

/// M with M(A) ⊆ gen_cuboid(j): the first coordinate of M is scale·functional.
struct TrivialityWitness {
  Point functional;
  Residue scale = 1;
  unsigned j = 0;
  ModMatrix map{2, 1, 1};
};

struct NontrivialityVerdict {
  bool nontrivial = true;
  std::optional<TrivialityWitness> witness;
  std::string method;
};

/// An invertible matrix whose first row is `row`; the other rows are unit vectors.
inline ModMatrix complete_to_automorphism(Residue p, const Point& row) {
  const unsigned n = static_cast<unsigned>(row.size());
  unsigned lead = 0;
  while (lead < n && row[lead] == 0) ++lead;
  if (lead == n) throw ParameterError("zero functional");
  ModMatrix m(p, n, n);
  for (unsigned c = 0; c < n; ++c) m(0, c) = row[c];
  unsigned r = 1;
  for (unsigned c = 0; c < n; ++c)
    if (c != lead) m(r++, c) = 1;
  return m;
}

/// A is trivial iff some automorphism maps it into an extremal cuboid. Since the cuboid is
/// cut out by its first coordinate, this holds iff some nonzero functional f has
/// f(A) ⊆ [a_j, a_j+m]. All functionals are scanned, so the answer is exact in every dimension.
inline NontrivialityVerdict nontriviality_check(const VecSet& a, const Params& q) {
  q.validate();
  if (a.modulus() != q.p || a.dim() != q.n) throw ParameterError("set does not live in F_p^n of the parameters");
  if (!q.cuboid_range()) throw ParameterError("triviality is defined only for λ ≤ k+ℓ-3");
  const Residue p = q.p;
  const auto intervals = extremal_intervals(q);
  // shrunk[j][s] = s^{-1}·I_j, so s·Supp ⊆ I_j iff Supp ⊆ shrunk[j][s].
  std::vector<std::vector<ZpSet>> shrunk(intervals.size());
  for (std::size_t j = 0; j < intervals.size(); ++j)
    for (Residue s = 1; s < p; ++s) shrunk[j].push_back(dilate(intervals[j], mod_inv(s, p)));

  const auto pts = a.points();
  NontrivialityVerdict v;
  v.method = a.dim() == 1 ? "dilation scan" : "functional scan";
  for (const auto& hp : hyperplane_decompositions(p, a.dim())) {
    ZpSet image(p);
    for (const auto& x : pts) {
      std::uint64_t acc = 0;
      for (std::size_t i = 0; i < x.size(); ++i) acc += std::uint64_t{hp.normal[i]} * x[i];
      image.insert(static_cast<Residue>(acc % p));
    }
    for (std::size_t j = 0; j < intervals.size(); ++j)
      for (Residue s = 1; s < p; ++s) {
        if (!image.is_subset_of(shrunk[j][s - 1])) continue;
        Point row(hp.normal.size());
        for (std::size_t i = 0; i < row.size(); ++i) row[i] = mod_mul(hp.normal[i], s, p);
        TrivialityWitness w{hp.normal, s, static_cast<unsigned>(j), complete_to_automorphism(p, row)};
        if (!apply_automorphism(a, w.map).is_subset_of(gen_cuboid({q, w.j})))
          throw CheckFailure("triviality witness does not embed the set");
        v.nontrivial = false;
        v.witness = std::move(w);
        return v;
      }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Non-isomorphism certificates between generated structures

struct OverlapCertificate {
  bool certified = false;
  std::string reason;
};

/// Certifies A ≇ B from their natural-axis profiles. An isomorphism would give s, s' with
/// s·Supp(A) ⊆ Supp(B) and s'·Supp(B) ⊆ Supp(A) (both have a full part and weight < p),
/// hence equal weights and equal e_d multisets of the supports.
inline OverlapCertificate certify_non_isomorphic(const Generated& a, const Generated& b) {
  OverlapCertificate c;
  if (a.profile.weight != b.profile.weight) {
    c.certified = true;
    c.reason = "weights " + std::to_string(a.profile.weight) + " vs " + std::to_string(b.profile.weight);
  } else if (ed_profile(a.support).multiset() != ed_profile(b.support).multiset()) {
    c.certified = true;
    c.reason = "support e_d multisets differ";
  }
  try {
    const bool fwd = support_contained(a.profile, b.profile).has_value();
    const bool back = support_contained(b.profile, a.profile).has_value();
    if (!fwd || !back) {
      if (!c.certified) c.reason = "no dilation embeds one support in the other";
      c.certified = true;
    } else if (c.certified && a.profile.weight != b.profile.weight) {
      throw CheckFailure("support containment in both directions with different weights");
    }
  } catch (const HypothesisError& e) {
    if (!c.certified) c.reason = std::string("hypotheses fail: ") + e.what();
  }
  return c;
}

/// Every structure the generators define for these parameters, with canonical extras:
/// all type 1 starts, V = {0} for types 2/4, P = {e_0} (when admissible) for type 5 and the (2,1) structure.
inline std::vector<TypeSpec> default_type_specs(const Params& q, bool include_rz = true) {
  std::vector<TypeSpec> out;
  for (auto a : type1_starts(q)) out.push_back({Structure::Type1, q, a, {}, 0, {}});
  if (q.l == 1 && q.n >= 2) out.push_back({Structure::Type2, q, {}, {}, 0, {}});
  if (q.kl() >= 5 && q.lambda() + 4 == q.kl() && q.m() >= 2) out.push_back({Structure::Type3, q, {}, {}, 0, {}});
  if (q.kl() == 5 && q.lambda() == 1 && q.n >= 2 && q.m() >= 2) out.push_back({Structure::Type4, q, {}, {}, 0, {}});
  if (q.k == 3 && q.l == 1 && q.lambda() == 1 && q.n >= 2 && q.m() >= 2) {
    Point e(1, 1);
    out.push_back({Structure::Type5, q, {}, {}, 1, {e}});
  }
  if (include_rz && q.k == 2 && q.l == 1 && q.lambda() == 0 && q.m() >= 2) {
    if (q.n == 1) {
      out.push_back({Structure::RZ, q, {}, {}, 0, {}});
    } else {
      out.push_back({Structure::RZ, q, {}, {}, 1, {}});
      out.push_back({Structure::RZ, q, {}, {}, 1, {Point{1}}});
    }
  }
  return out;
}

}  // namespace klsf
