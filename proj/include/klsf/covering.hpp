#pragma once

// Covering property (A lies in an AP of length |2A|-|A|+1) and empirical τ scans.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "klsf/errors.hpp"
#include "klsf/zp_set.hpp"

namespace klsf {

struct CoveringVerdict {
  ZpSet set{2};
  std::size_t doubling = 0;    // |2A|
  std::size_t target_len = 0;  // |2A| - |A| + 1
  std::size_t achieved_len = 0;
  bool covered = false;
  ApCover witness;
};

inline CoveringVerdict covering_verdict(const ZpSet& a) {
  if (a.empty()) throw ParameterError("covering needs a nonempty set");
  CoveringVerdict v;
  v.set = a;
  v.doubling = sumset(a, a).size();
  v.target_len = v.doubling - a.size() + 1;
  v.witness = min_ap_cover(a);
  v.achieved_len = v.witness.length;
  v.covered = v.achieved_len <= v.target_len;
  return v;
}

/// Positive rational, used for the density bound c.
struct Density {
  std::uint64_t num = 1;
  std::uint64_t den = 3;

  /// Accepts "a", "a/b" with a, b decimals (e.g. "1/10.7").
  static Density parse(const std::string& text) {
    auto decimal = [](std::string s, std::uint64_t& num, std::uint64_t& den) {
      num = 0;
      den = 1;
      bool frac = false, digits = false;
      for (char ch : s) {
        if (ch == '.') {
          if (frac) throw ParameterError("bad number '" + s + "'");
          frac = true;
        } else if (ch >= '0' && ch <= '9') {
          num = num * 10 + static_cast<std::uint64_t>(ch - '0');
          if (frac) den *= 10;
          digits = true;
          if (num > (std::uint64_t{1} << 40)) throw ParameterError("number too long");
        } else {
          throw ParameterError("bad number '" + s + "'");
        }
      }
      if (!digits) throw ParameterError("bad number '" + s + "'");
    };
    Density d;
    const auto slash = text.find('/');
    std::uint64_t an, ad;
    decimal(text.substr(0, slash), an, ad);
    if (slash == std::string::npos) {
      d = {an, ad};
    } else {
      std::uint64_t bn, bd;
      decimal(text.substr(slash + 1), bn, bd);
      if (bn == 0) throw ParameterError("division by zero in density");
      d = {an * bd, ad * bn};
    }
    if (d.num == 0 || d.num >= d.den) throw ParameterError("c must lie in (0, 1)");
    return d;
  }

  /// floor(c·p).
  std::size_t size_cap(Residue p) const { return static_cast<std::size_t>(std::uint64_t{p} * num / den); }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// τ grid j/steps for j = 1..steps.
struct TauRow {
  unsigned j = 0;
  double tau = 0;
  std::uint64_t tested = 0;      // sets meeting |2A| ≤ (2+τ)|A| - 3
  std::uint64_t violations = 0;  // of those, not covered
};

struct TauScan {
  Residue p = 2;
  Density c;
  std::string mode;  // "exhaustive" or "sampled"
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::uint64_t sets_examined = 0;
  unsigned steps = 20;
  std::vector<TauRow> rows;
  double tau_feasible = 0;  // largest grid τ with no violation at it or below
  std::vector<CoveringVerdict> violations;  // smallest τ index first, capped
  bool monotone = true;

  std::uint64_t violations_at(unsigned j) const { return rows.at(j - 1).violations; }
};

namespace detail {

/// |2A| ≤ (2 + j/steps)|A| - 3 in integers.
inline bool doubling_hypothesis(std::size_t doubling, std::size_t size, unsigned j, unsigned steps) {
  const std::int64_t lhs = static_cast<std::int64_t>(steps) * static_cast<std::int64_t>(doubling);
  const std::int64_t rhs = static_cast<std::int64_t>(2 * steps + j) * static_cast<std::int64_t>(size) -
                           3 * static_cast<std::int64_t>(steps);
  return lhs <= rhs;
}

class TauAccumulator {
 public:
  TauAccumulator(TauScan& scan, std::size_t cap) : scan_(scan), cap_(cap) {
    for (unsigned j = 1; j <= scan.steps; ++j)
      scan.rows.push_back({j, static_cast<double>(j) / scan.steps, 0, 0});
  }

  void consider(const ZpSet& a) {
    ++scan_.sets_examined;
    const std::size_t dbl = sumset(a, a).size();
    if (!doubling_hypothesis(dbl, a.size(), scan_.steps, scan_.steps)) return;
    unsigned first = scan_.steps + 1;
    for (unsigned j = 1; j <= scan_.steps; ++j)
      if (doubling_hypothesis(dbl, a.size(), j, scan_.steps)) {
        first = j;
        break;
      }
    const auto v = covering_verdict(a);
    for (unsigned j = first; j <= scan_.steps; ++j) {
      ++scan_.rows[j - 1].tested;
      if (!v.covered) ++scan_.rows[j - 1].violations;
    }
    if (!v.covered && scan_.violations.size() < cap_) scan_.violations.push_back(v);
  }

  void finish() {
    scan_.tau_feasible = 0;
    for (const auto& r : scan_.rows) {
      if (r.violations) break;
      scan_.tau_feasible = r.tau;
    }
    for (std::size_t i = 1; i < scan_.rows.size(); ++i)
      if (scan_.rows[i].violations < scan_.rows[i - 1].violations || scan_.rows[i].tested < scan_.rows[i - 1].tested)
        scan_.monotone = false;
  }

 private:
  TauScan& scan_;
  std::size_t cap_;
};

}  // namespace detail

/// Every A with 2 ≤ |A| ≤ floor(cp) up to affine maps x ↦ ux + w (which preserve |2A| and
/// AP covers): the sets containing {0, 1}. Singletons are always covered and are skipped.
inline TauScan tau_scan_exhaustive(Residue p, Density c, Residue p_limit = 31, std::size_t violation_cap = 64) {
  require_prime(p);
  if (c.num == 0 || c.num >= c.den) throw ParameterError("c must lie in (0, 1)");
  if (p > p_limit) throw ParameterError("exhaustive τ scan limited to p ≤ " + std::to_string(p_limit));
  TauScan scan;
  scan.p = p;
  scan.c = c;
  scan.mode = "exhaustive";
  detail::TauAccumulator acc(scan, violation_cap);
  const std::size_t cap = c.size_cap(p);
  if (cap >= 2) {
    ZpSet cur(p, {0, 1});
    auto rec = [&](auto&& self, Residue from) -> void {
      acc.consider(cur);
      if (cur.size() >= cap) return;
      for (Residue x = from; x < p; ++x) {
        cur.insert(x);
        self(self, x + 1);
        cur.erase(x);
      }
    };
    rec(rec, 2);
  }
  acc.finish();
  return scan;
}

/// Seeded sampling: half the trials draw a uniform subset of a random size in [2, floor(cp)],
/// half draw it inside a random interval of length at most 3·size, where small doubling lives.
inline TauScan tau_scan_sampled(Residue p, Density c, std::uint64_t trials, std::uint64_t seed,
                                std::size_t violation_cap = 64) {
  require_prime(p);
  if (c.num == 0 || c.num >= c.den) throw ParameterError("c must lie in (0, 1)");
  if (p > 10000) throw ParameterError("sampled τ scan limited to p ≤ 10^4");
  TauScan scan;
  scan.p = p;
  scan.c = c;
  scan.mode = "sampled";
  scan.seed = seed;
  scan.trials = trials;
  detail::TauAccumulator acc(scan, violation_cap);
  const std::size_t cap = c.size_cap(p);
  if (cap >= 2) {
    std::mt19937_64 rng(seed);
    std::vector<Residue> pool;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const std::size_t size = 2 + static_cast<std::size_t>(rng() % (cap - 1));
      std::size_t span = p;
      if (t % 2 == 1) span = std::min<std::size_t>(p, size + static_cast<std::size_t>(rng() % (2 * size + 1)));
      const Residue start = static_cast<Residue>(rng() % p);
      pool.clear();
      for (std::size_t i = 0; i < span; ++i) pool.push_back(static_cast<Residue>((start + i) % p));
      for (std::size_t i = 0; i < size; ++i) std::swap(pool[i], pool[i + rng() % (span - i)]);
      ZpSet a(p);
      for (std::size_t i = 0; i < size; ++i) a.insert(pool[i]);
      acc.consider(a);
    }
  }
  acc.finish();
  return scan;
}

}  // namespace klsf
