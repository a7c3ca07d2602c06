#include <gtest/gtest.h>

#include "klsf/search.hpp"
#include "oracles.hpp"

using namespace klsf;

namespace {

std::set<std::vector<std::uint32_t>> as_vectors(const std::vector<ZpSet>& sets, std::size_t size) {
  std::set<std::vector<std::uint32_t>> out;
  for (const auto& s : sets)
    if (s.size() == size) {
      const auto e = s.elements();
      out.insert({e.begin(), e.end()});
    }
  return out;
}

}  // namespace

TEST(CanonicalForm, Examples) {
  const ZpSet a(11, {2, 7, 10});
  const ZpSet c = canonical_form(a);
  EXPECT_EQ(c, canonical_form(ZpSet(11, {3, 4, 5})));
  const auto want = oracle::canonical(oracle::elems(a), 11);
  EXPECT_EQ(oracle::elems(c), oracle::Elems(want.begin(), want.end()));
  for (Residue x = 1; x < 13; ++x) EXPECT_EQ(canonical_form(ZpSet(13, {x})), ZpSet(13, {1}));
  EXPECT_EQ(canonical_form(ZpSet(13, {0})), ZpSet(13, {0}));
  EXPECT_EQ(canonical_form(c), c);
}

TEST(EnumerateMax, Examples) {
  const auto r21 = enumerate_max(Params::make(2, 1, 11));
  EXPECT_EQ(r21.max_size, 4u);
  ASSERT_EQ(r21.extremal.size(), 1u);
  EXPECT_EQ(r21.extremal.front(), canonical_form(ZpSet::interval(11, 4, 7)));
  EXPECT_TRUE(r21.findings.empty());

  const auto r31 = enumerate_max(Params::make(3, 1, 23));
  EXPECT_EQ(r31.max_size, 6u);
  ASSERT_EQ(r31.extremal.size(), 1u);
  EXPECT_EQ(r31.extremal.front(), canonical_form(ZpSet::interval(23, 15, 20)));

  const auto r32 = enumerate_max(Params::make(3, 2, 17));
  EXPECT_EQ(r32.max_size, 4u);
  ASSERT_EQ(r32.extremal.size(), 1u);
  EXPECT_EQ(r32.extremal.front(), canonical_form(ZpSet::interval(17, 7, 10)));
}

TEST(EnumerateMax, MaximumMatchesOracle) {
  for (auto [k, l] : {std::pair{2u, 1u}, {3u, 1u}, {3u, 2u}, {4u, 1u}, {4u, 3u}})
    for (Residue p : {5u, 7u, 11u, 13u, 17u}) {
      if (p < k + l + 2) continue;
      const auto q = Params::make(k, l, p);
      EXPECT_EQ(enumerate_max(q).max_size, oracle::max_sumfree_size(p, k, l)) << q.to_string();
    }
}

TEST(EnumerateCanonical, MatchesNoPruningOracle) {
  for (auto [k, l] : {std::pair{2u, 1u}, {3u, 1u}, {3u, 2u}, {4u, 1u}})
    for (Residue p : {7u, 11u, 13u, 17u}) {
      if (p < k + l + 2) continue;
      const auto q = Params::make(k, l, p);
      const auto sets = enumerate_canonical(q, q.m(), q.m() + 1);
      for (std::size_t size : {std::size_t{q.m()}, std::size_t{q.m()} + 1})
        EXPECT_EQ(as_vectors(sets, size), oracle::sumfree_orbits(p, k, l, size)) << q.to_string() << " size " << size;
    }
}

TEST(EnumerateMax, IndependentOfThreadCount) {
  SearchOptions one, many;
  one.threads = 1;
  many.threads = 4;
  for (auto [k, l, p] : {std::tuple{3u, 2u, 29u}, {2u, 1u, 29u}, {4u, 1u, 31u}}) {
    const auto q = Params::make(k, l, p);
    const auto a = enumerate_max(q, one), b = enumerate_max(q, many);
    EXPECT_EQ(a.max_size, b.max_size);
    EXPECT_EQ(a.extremal, b.extremal);
    EXPECT_EQ(a.node_count, b.node_count);
  }
}

TEST(EnumerateMax, WideMasks) {
  // p ≥ 64 uses 128-bit masks.
  const auto r = enumerate_max(Params::make(4, 3, 67), SearchOptions{127, 1});
  EXPECT_EQ(r.max_size, r.params.m() + 1u);
  EXPECT_TRUE(r.findings.empty());
}

TEST(SecondLevel, Examples) {
  const auto r21 = enumerate_second_level(Params::make(2, 1, 11));
  const auto orbit = canonical_form(ZpSet(11, {3, 4, 5}));
  bool found = false;
  for (const auto& o : r21.second_level) found = found || o.set == orbit;
  EXPECT_TRUE(found);

  const auto r31 = enumerate_second_level(Params::make(3, 1, 23));
  const auto type1 = canonical_form(ZpSet::interval(23, 5, 9));
  bool labeled = false;
  for (const auto& o : r31.second_level)
    if (o.set == type1) labeled = o.report.label == Label::Type1;
  EXPECT_TRUE(labeled);
  EXPECT_TRUE(r31.findings.empty());
}

TEST(SecondLevel, Type3SupportAppears) {
  const auto q = Params::make(3, 2, 43);
  const auto r = enumerate_second_level(q);
  const auto t3 = canonical_form(gen_type({Structure::Type3, q, {}, {}, 0, {}}).set.to_zp());
  bool found = false;
  for (const auto& o : r.second_level)
    if (o.set == t3) found = o.report.label == Label::Type3;
  EXPECT_TRUE(found);
}

TEST(Search, Limits) {
  EXPECT_THROW(enumerate_max(Params::make(2, 1, 97)), ParameterError);
  EXPECT_THROW(enumerate_max(Params::make(2, 1, 11, 2)), ParameterError);
  EXPECT_THROW(enumerate_second_level(Params::make(3, 2, 11)), ParameterError);  // λ = 4 > k+ℓ-3
  EXPECT_THROW(enumerate_max(Params::make(2, 1, 131), SearchOptions{200, 1}), UnsupportedError);
}
