#pragma once

// Places a (k,l)-sum-free set in the taxonomy: trivial, types 1-5, the (2,1) second-level
// structure, or unknown. Every label other than Unknown carries a witness that is checked.

#include <optional>
#include <string>
#include <vector>

#include "klsf/constructions.hpp"
#include "klsf/errors.hpp"
#include "klsf/params.hpp"
#include "klsf/vec_set.hpp"
#include "klsf/zp_set.hpp"

namespace klsf {

enum class Label { NotSumFree, Trivial, Type1, Type2, Type3, Type4, Type5, RZ, NontrivialUnknown };

inline std::string label_name(Label l) {
  switch (l) {
    case Label::NotSumFree: return "not-sum-free";
    case Label::Trivial: return "trivial";
    case Label::Type1: return "type1";
    case Label::Type2: return "type2";
    case Label::Type3: return "type3";
    case Label::Type4: return "type4";
    case Label::Type5: return "type5";
    case Label::RZ: return "rz";
    case Label::NontrivialUnknown: return "nontrivial-unknown";
  }
  return "?";
}

inline Label label_of(Structure s) { return static_cast<Label>(static_cast<int>(s) + 1); }

/// apply_automorphism(gen_type(spec).set, map) == the classified set.
struct TypeWitness {
  TypeSpec spec;
  ModMatrix map{2, 1, 1};
  Point normal;  // hyperplane along which the match was found
};

struct ClassReport {
  Label label = Label::NontrivialUnknown;
  std::vector<Label> matches;
  std::optional<TypeWitness> type_witness;
  std::optional<TrivialityWitness> trivial_witness;
  std::vector<std::string> notes;

  bool normal() const { return label == Label::Type1 || label == Label::Type2; }
};

namespace detail {

struct LayerTemplate {
  enum Kind { Fixed, FreeP, FreeNotP };
  Residue index = 0;
  Kind kind = Fixed;
  VecSet fixed{2, 0};
};

struct Template {
  TypeSpec spec;
  std::vector<LayerTemplate> layers;
  bool free_p = false;
};

inline Template fixed_template(const TypeSpec& spec) {
  const auto g = gen_type(spec);
  Template t{spec, {}, false};
  for (Residue i = 0; i < spec.params.p; ++i)
    if (!g.profile.parts[i].empty()) t.layers.push_back({i, LayerTemplate::Fixed, g.profile.parts[i]});
  return t;
}

/// Type 5 / (2,1) layers at n = 2, s = 1 with P left free.
inline Template chain_template(const TypeSpec& spec, Residue base) {
  const Params& q = spec.params;
  const Residue p = q.p;
  const unsigned m = q.m();
  auto at = [&](std::int64_t off) { return mod_reduce(std::int64_t{base} + off, p); };
  VecSet origin(p, 1);
  origin.insert(Point{0});
  Template t{spec, {}, true};
  t.layers.push_back({at(-1), LayerTemplate::Fixed, origin});
  t.layers.push_back({at(0), LayerTemplate::FreeNotP, VecSet(p, 1)});
  for (unsigned i = 1; i + 2 <= m; ++i) t.layers.push_back({at(i), LayerTemplate::Fixed, VecSet::full(p, 1)});
  t.layers.push_back({at(std::int64_t{m} - 1), LayerTemplate::Fixed, origin.complement()});
  t.layers.push_back({at(m), LayerTemplate::FreeP, VecSet(p, 1)});
  return t;
}

inline std::vector<Template> templates_for(const Params& q) {
  std::vector<Template> out;
  for (const auto& spec : default_type_specs(q, false)) {
    if (spec.which == Structure::Type5) continue;
    out.push_back(fixed_template(spec));
  }
  const bool type5 = q.k == 3 && q.l == 1 && q.lambda() == 1 && q.m() >= 2;
  const bool rz = q.k == 2 && q.l == 1 && q.lambda() == 0 && q.m() >= 2;
  if (rz) out.push_back(fixed_template({Structure::RZ, q, {}, {}, 0, {}}));
  if (q.n == 2) {
    if (type5) out.push_back(chain_template({Structure::Type5, q, {}, {}, 1, {}}, type5_start(q)));
    if (rz) out.push_back(chain_template({Structure::RZ, q, {}, {}, 1, {}}, mod_reduce(q.m() + 1, q.p)));
  }
  return out;
}

/// Layer `part` shifted by -shift in the one K-coordinate (identity for n = 1).
inline VecSet unshear(const VecSet& part, Residue shift) {
  if (part.dim() == 0 || shift == 0) return part;
  return part.translated(Point{mod_neg(shift, part.modulus())});
}

inline std::optional<TypeWitness> match_template(const VecSet& a, const Template& t, const Hyperplane& hp,
                                                 const DecompProfile& prof) {
  const Residue p = a.modulus();
  const unsigned n = a.dim();
  ZpSet required(p), allowed(p);
  for (const auto& l : t.layers) {
    allowed.insert(l.index);
    if (l.kind != LayerTemplate::FreeP) required.insert(l.index);
  }
  const Point& v = hp.decomposition.v;
  for (Residue sigma = 1; sigma < p; ++sigma) {
    if (!dilate(required, sigma).is_subset_of(prof.support)) continue;
    if (!prof.support.is_subset_of(dilate(allowed, sigma))) continue;
    const Residue shears = n == 2 ? p : 1;
    for (Residue h = 0; h < shears; ++h) {
      bool ok = true;
      std::optional<VecSet> pset, notp;
      for (const auto& l : t.layers) {
        const Residue idx = mod_mul(sigma, l.index, p);
        VecSet layer = unshear(prof.parts[idx], mod_mul(h, l.index, p));
        if (l.kind == LayerTemplate::Fixed) {
          if (!(layer == l.fixed)) {
            ok = false;
            break;
          }
        } else if (l.kind == LayerTemplate::FreeP) {
          pset = std::move(layer);
        } else {
          notp = std::move(layer);
        }
      }
      if (!ok) continue;
      TypeSpec spec = t.spec;
      if (t.free_p) {
        if (!pset || !notp || !(*notp == pset->complement())) continue;
        spec.pset = pset->points();
      }
      Generated g;
      try {
        g = gen_type(spec);
      } catch (const ParameterError&) {
        continue;  // recovered P violates the structure's constraint
      }
      ModMatrix map(p, n, n);
      if (n == 1) {
        map(0, 0) = mod_mul(sigma, v[0], p);
      } else {
        const Point& b = hp.decomposition.basis[0];
        for (unsigned i = 0; i < 2; ++i) {
          map(i, 0) = mod_add(mod_mul(sigma, v[i], p), mod_mul(h, b[i], p), p);
          map(i, 1) = b[i];
        }
      }
      if (apply_automorphism(g.set, map) == a) return TypeWitness{spec, map, hp.normal};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Full decision for n ≤ 2. Label order: not sum-free, trivial, first matching type, unknown.
inline ClassReport classify(const VecSet& a, unsigned k, unsigned l) {
  require_k_gt_l(k, l);
  if (a.empty()) throw ParameterError("classify needs a nonempty set");
  if (a.dim() > 2) throw UnsupportedError("classification is implemented for n ≤ 2");
  const Params q = Params::make(k, l, a.modulus(), a.dim());
  ClassReport r;
  if (!is_kl_sumfree(a, k, l)) {
    r.label = Label::NotSumFree;
    return r;
  }
  if (q.cuboid_range()) {
    auto v = nontriviality_check(a, q);
    if (!v.nontrivial) {
      r.label = Label::Trivial;
      r.trivial_witness = v.witness;
      r.notes.push_back("embeds in extremal cuboid j=" + std::to_string(v.witness->j) + " (" + v.method + ")");
      return r;
    }
    r.notes.push_back("nontrivial (" + v.method + ")");
  } else {
    r.notes.push_back("triviality undefined: λ > k+ℓ-3");
  }
  const auto target = std::uint64_t{q.m()} * q.layer();
  if (a.size() != target) {
    r.notes.push_back("size " + std::to_string(a.size()) + " ≠ m·p^(n-1) = " + std::to_string(target) +
                      ": no type applies");
    r.label = Label::NontrivialUnknown;
    return r;
  }
  const auto templates = detail::templates_for(q);
  const auto planes = hyperplane_decompositions(q.p, q.n);
  std::vector<DecompProfile> profiles;
  for (const auto& hp : planes) profiles.push_back(decompose(a, hp.decomposition));
  for (const auto& t : templates) {
    const Label lab = label_of(t.spec.which);
    if (std::find(r.matches.begin(), r.matches.end(), lab) != r.matches.end()) continue;
    for (std::size_t i = 0; i < planes.size(); ++i) {
      auto w = detail::match_template(a, t, planes[i], profiles[i]);
      if (!w) continue;
      r.matches.push_back(lab);
      if (!r.type_witness || lab < label_of(r.type_witness->spec.which)) r.type_witness = std::move(w);
      break;
    }
  }
  std::sort(r.matches.begin(), r.matches.end());
  r.label = r.matches.empty() ? Label::NontrivialUnknown : r.matches.front();
  if (r.matches.size() > 1) r.notes.push_back("isomorphic to several structures; primary label is the first");
  if (r.type_witness) {
    const auto g = gen_type(r.type_witness->spec);
    if (!(apply_automorphism(g.set, r.type_witness->map) == a)) throw CheckFailure("type witness does not regenerate the set");
    for (const auto& f : g.flags) r.notes.push_back(f);
  }
  return r;
}

inline ClassReport classify(const ZpSet& a, unsigned k, unsigned l) { return classify(VecSet::from_zp(a), k, l); }

// ---------------------------------------------------------------------------
// Weight scan and balance

struct WeightRow {
  Point normal;
  std::size_t weight = 0;
  std::vector<std::uint64_t> head;  // largest part sizes, up to m+2 of them
  bool small_weight = false;        // ω ≤ m+2
  std::optional<ApCover> prefix_cover;  // best AP cover of C_m, when small_weight
  std::vector<std::size_t> prefix_holes;
};

inline std::vector<WeightRow> weight_scan(const VecSet& a, unsigned k, unsigned l) {
  const Params q = Params::make(k, l, a.modulus(), a.dim());
  const unsigned m = q.m();
  std::vector<WeightRow> rows;
  for (const auto& hp : hyperplane_decompositions(q.p, q.n)) {
    const auto prof = decompose(a, hp.decomposition);
    WeightRow row;
    row.normal = hp.normal;
    row.weight = prof.weight;
    for (std::size_t i = 0; i < prof.sizes.size() && i < m + 2; ++i) row.head.push_back(prof.sizes[i]);
    row.small_weight = prof.weight <= m + 2;
    if (row.small_weight && prof.weight >= m) {
      const ZpSet cm = prof.prefix(m);
      const ApCover cover = min_ap_cover(cm);
      row.prefix_cover = cover;
      const ZpSet straight = dilate(cm, mod_inv(cover.diff, q.p));
      row.prefix_holes = holes(straight, min_interval_cover(straight));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Σ_i ||A_i| - u|.
inline std::uint64_t balance_deviation(const DecompProfile& prof, std::uint64_t u) {
  std::uint64_t total = 0;
  for (const auto& part : prof.parts) {
    const std::uint64_t s = part.size();
    total += s > u ? s - u : u - s;
  }
  return total;
}

/// |B_{(p+1)/2}|, the median part size.
inline std::uint64_t median_part(const DecompProfile& prof) { return prof.sizes.at((prof.p + 1) / 2 - 1); }

struct BalanceCheck {
  bool applicable = false;
  std::string reason;
  std::uint64_t u = 0;
  std::uint64_t deviation = 0;
  std::uint64_t bound = 0;
  bool holds() const { return !applicable || deviation <= bound; }
};

/// The deviation bound (2+θ)p^(n-1) for sum-free A with ω > p-θ and |A| ≥ m·p^(n-1).
inline BalanceCheck balance_check(const VecSet& a, const Params& q, const Decomposition& d,
                                  std::optional<std::uint64_t> u = std::nullopt) {
  const auto prof = decompose(a, d);
  BalanceCheck c;
  c.u = u.value_or(median_part(prof));
  c.deviation = balance_deviation(prof, c.u);
  c.bound = (2 + std::uint64_t{q.theta()}) * q.layer();
  if (!is_kl_sumfree(a, q.k, q.l)) {
    c.reason = "not (k,ℓ)-sum-free";
  } else if (prof.weight + q.theta() <= q.p) {
    c.reason = "ω ≤ p-θ";
  } else if (a.size() < std::uint64_t{q.m()} * q.layer()) {
    c.reason = "|A| < m·p^(n-1)";
  } else {
    c.applicable = true;
  }
  return c;
}

}  // namespace klsf
