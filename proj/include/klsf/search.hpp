#pragma once

// Exhaustive enumeration of (k,l)-sum-free subsets of Z_p up to dilation.
//
// Depth-first search adds residues in increasing order starting from {1} (every nonempty
// sum-free set has a dilate containing 1 as its least element, and 0 is never allowed).
// A branch is cut when its current set already has a dilate that is lexicographically
// smaller; this is sound because the smaller dilate of a prefix stays smaller after any
// larger residues are added. The h-fold sumsets of the current set are kept for h ≤ k and
// updated by S_h' = S_h ∪ (S_{h-1}' + x).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "klsf/classifier.hpp"
#include "klsf/constructions.hpp"
#include "klsf/errors.hpp"
#include "klsf/params.hpp"
#include "klsf/zp_set.hpp"

namespace klsf {

/// Least dilate of A under the order of sorted element sequences.
inline ZpSet canonical_form(const ZpSet& a) {
  ZpSet best = a;
  for (Residue c = 2; c < a.modulus(); ++c) {
    ZpSet d = dilate(a, c);
    if (d < best) best = std::move(d);
  }
  return best;
}

struct SearchOptions {
  Residue p_limit = 59;
  unsigned threads = 0;  // 0: KLSF_THREADS or 1
};

struct SecondLevelOrbit {
  ZpSet set{2};
  ClassReport report;
};

struct SearchResult {
  Params params;
  std::size_t max_size = 0;
  std::vector<ZpSet> extremal;                 // canonical forms, sorted
  std::vector<SecondLevelOrbit> second_level;  // nontrivial size-m orbits, sorted
  std::vector<std::string> findings;
  std::uint64_t node_count = 0;
  double seconds = 0;
};

inline unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  if (const char* env = std::getenv("KLSF_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

/// Length of the longest (k,l)-sum-free interval of Z_p.
inline std::size_t longest_sumfree_interval(Residue p, unsigned k, unsigned l) {
  for (std::size_t len = p - 1; len >= 1; --len)
    for (Residue a = 1; a < p; ++a)
      if (is_kl_sumfree(ZpSet::interval(p, a, std::int64_t{a} + static_cast<std::int64_t>(len) - 1), k, l))
        return len;
  return 0;
}

namespace detail {

template <class Mask>
class SumFreeSearch {
 public:
  /// Collects every canonical set whose size lies in [lo, hi].
  SumFreeSearch(Residue p, unsigned k, unsigned l, std::size_t lo, std::size_t hi)
      : p_(p), k_(k), l_(l), lo_(lo), hi_(hi) {
    full_ = p == sizeof(Mask) * 8 ? ~Mask{0} : ((Mask{1} << p) - 1);
  }

  std::vector<ZpSet> run(unsigned threads, std::uint64_t& nodes) {
    std::vector<ZpSet> out;
    nodes = 0;
    if (hi_ == 0 || p_ < 2) return out;
    // Root {1}: sum-free iff k ≢ l (mod p).
    Frame root = initial_frame();
    if (!add(root, root, 1)) return out;
    nodes = 1;
    if (lo_ <= 1) out.push_back(to_set(root));
    if (hi_ <= 1) return out;

    std::atomic<Residue> next{2};
    std::vector<std::vector<ZpSet>> found(threads);
    std::vector<std::uint64_t> counts(threads, 0);
    auto worker = [&](unsigned id) {
      std::vector<Frame> stack(hi_ + 1, initial_frame());
      stack[1] = root;
      for (Residue y = next.fetch_add(1); y < p_; y = next.fetch_add(1)) {
        if (1 + (p_ - y) < lo_) continue;
        if (!add(stack[1], stack[2], y)) continue;
        ++counts[id];
        if (!prefix_canonical(stack[2])) continue;
        descend(stack, 2, y, found[id], counts[id]);
      }
    };
    if (threads <= 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
      for (auto& t : pool) t.join();
    }
    for (unsigned t = 0; t < threads; ++t) {
      nodes += counts[t];
      out.insert(out.end(), found[t].begin(), found[t].end());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Frame {
    std::vector<Mask> folds;    // folds[h] = hS, folds[0] = {0}
    std::vector<Mask> dilates;  // dilates[c] = c·S for c ∈ [2, p-1]
    std::size_t size = 0;
  };

  Frame initial_frame() const {
    Frame f;
    f.folds.assign(k_ + 1, Mask{0});
    f.folds[0] = Mask{1};
    f.dilates.assign(p_, Mask{0});
    return f;
  }

  Mask rotate(Mask x, Residue s) const { return ((x << s) | (x >> (p_ - s))) & full_; }

  /// into = from ∪ {x} with updated folds; false if the result is not sum-free.
  bool add(const Frame& from, Frame& into, Residue x) const {
    Mask prev = from.folds[0];
    for (unsigned h = 1; h <= k_; ++h) {
      const Mask cur = from.folds[h] | rotate(prev, x);
      into.folds[h] = cur;
      prev = cur;
    }
    into.folds[0] = Mask{1};
    if (into.folds[k_] & into.folds[l_]) return false;
    for (Residue c = 2; c < p_; ++c)
      into.dilates[c] = from.dilates[c] | (Mask{1} << static_cast<Residue>((std::uint64_t{c} * x) % p_));
    into.size = from.size + 1;
    return true;
  }

  /// No dilate of S is smaller: for each c the lowest element of c·S Δ S must lie in S.
  bool prefix_canonical(const Frame& f) const {
    const Mask s = f.folds[1];
    for (Residue c = 2; c < p_; ++c) {
      const Mask diff = f.dilates[c] ^ s;
      if (!diff) continue;
      const Mask low = diff & (~diff + 1);
      if (low & f.dilates[c]) return false;
    }
    return true;
  }

  ZpSet to_set(const Frame& f) const {
    ZpSet z(p_);
    for (Residue i = 0; i < p_; ++i)
      if ((f.folds[1] >> i) & 1) z.insert(i);
    return z;
  }

  void descend(std::vector<Frame>& stack, std::size_t depth, Residue last, std::vector<ZpSet>& out,
               std::uint64_t& nodes) const {
    const Frame& cur = stack[depth];
    if (cur.size >= lo_) out.push_back(to_set(cur));
    if (cur.size >= hi_) return;
    for (Residue x = last + 1; x < p_; ++x) {
      if (cur.size + (p_ - x) < lo_) break;
      Frame& nxt = stack[depth + 1];
      if (!add(cur, nxt, x)) continue;
      ++nodes;
      if (!prefix_canonical(nxt)) continue;
      descend(stack, depth + 1, x, out, nodes);
    }
  }

  Residue p_;
  unsigned k_, l_;
  std::size_t lo_, hi_;
  Mask full_;
};

inline std::vector<ZpSet> canonical_sumfree_sets(Residue p, unsigned k, unsigned l, std::size_t lo, std::size_t hi,
                                                 unsigned threads, std::uint64_t& nodes) {
  if (p < 64) return SumFreeSearch<std::uint64_t>(p, k, l, lo, hi).run(threads, nodes);
  if (p < 128) return SumFreeSearch<unsigned __int128>(p, k, l, lo, hi).run(threads, nodes);
  throw UnsupportedError("enumeration supports p < 128");
}

inline void check_search_params(const Params& q, const SearchOptions& opt) {
  if (q.n != 1) throw ParameterError("enumeration is over Z_p (n = 1)");
  if (q.p > opt.p_limit)
    throw ParameterError("p = " + std::to_string(q.p) + " exceeds the enumeration limit " +
                         std::to_string(opt.p_limit) + " (search space up to 2^" + std::to_string(q.p - 1) +
                         " subsets)");
}

}  // namespace detail

/// Every (k,l)-sum-free canonical set of size in [lo, hi]; sorted.
inline std::vector<ZpSet> enumerate_canonical(const Params& q, std::size_t lo, std::size_t hi, unsigned threads = 1) {
  std::uint64_t nodes = 0;
  return detail::canonical_sumfree_sets(q.p, q.k, q.l, lo, hi, resolve_threads(threads), nodes);
}

/// Maximum size and all extremal orbits. All sets at least as large as the longest sum-free
/// interval are collected, so the outcome does not depend on visit order or thread count.
inline SearchResult enumerate_max(const Params& q, const SearchOptions& opt = {}) {
  q.validate();
  detail::check_search_params(q, opt);
  const auto t0 = std::chrono::steady_clock::now();
  SearchResult r;
  r.params = q;
  const std::size_t seed = longest_sumfree_interval(q.p, q.k, q.l);
  const auto sets = detail::canonical_sumfree_sets(q.p, q.k, q.l, seed, q.p, resolve_threads(opt.threads), r.node_count);
  for (const auto& s : sets) r.max_size = std::max(r.max_size, s.size());
  for (const auto& s : sets)
    if (s.size() == r.max_size) r.extremal.push_back(s);
  if (q.cuboid_range()) {
    if (r.max_size != q.m() + 1)
      r.findings.push_back("maximum " + std::to_string(r.max_size) + " differs from m+1 = " + std::to_string(q.m() + 1));
    std::vector<ZpSet> expected;
    for (const auto& iv : extremal_intervals(q)) expected.push_back(canonical_form(iv));
    std::sort(expected.begin(), expected.end());
    if (expected != r.extremal)
      r.findings.push_back("extremal orbits differ from the cuboid slices (" + std::to_string(r.extremal.size()) +
                           " found, " + std::to_string(expected.size()) + " expected)");
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// All nontrivial sum-free orbits of size exactly m, each classified. Orbits the classifier
/// cannot place are reported as findings.
inline SearchResult enumerate_second_level(const Params& q, const SearchOptions& opt = {}) {
  q.validate();
  detail::check_search_params(q, opt);
  if (!q.cuboid_range()) throw ParameterError("second level needs extremal cuboids: λ ≤ k+ℓ-3");
  const auto t0 = std::chrono::steady_clock::now();
  SearchResult r;
  r.params = q;
  const auto sets = detail::canonical_sumfree_sets(q.p, q.k, q.l, q.m(), q.m(), resolve_threads(opt.threads), r.node_count);
  for (const auto& s : sets) {
    const VecSet v = VecSet::from_zp(s);
    if (!nontriviality_check(v, q).nontrivial) continue;
    SecondLevelOrbit o{s, classify(v, q.k, q.l)};
    if (o.report.label == Label::NontrivialUnknown)
      r.findings.push_back("unclassified nontrivial orbit " + to_literal(s) + " at " + q.to_string());
    r.second_level.push_back(std::move(o));
  }
  r.max_size = q.m();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace klsf
