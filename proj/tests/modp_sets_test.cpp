#include <random>

#include <gtest/gtest.h>

#include "klsf/zp_set.hpp"
#include "oracles.hpp"

using klsf::Residue;
using klsf::ZpSet;
using namespace klsf;

namespace {

ZpSet random_set(std::mt19937_64& rng, Residue p) {
  ZpSet s(p);
  const auto density = rng() % 100;
  for (Residue x = 0; x < p; ++x)
    if (rng() % 100 < density) s.insert(x);
  return s;
}

}  // namespace

TEST(ZpSet, SumsetExamples) {
  const ZpSet a(11, {4, 5, 6, 7});
  EXPECT_EQ(sumset(a, a), ZpSet(11, {8, 9, 10, 0, 1, 2, 3}));
  EXPECT_EQ(sumset(a, ZpSet(11, {0})), a);
  EXPECT_EQ(sumset(ZpSet(7, {2}), ZpSet(7, {3})), ZpSet(7, {5}));
}

TEST(ZpSet, HfoldExamples) {
  EXPECT_EQ(hfold(ZpSet(11, {4, 5, 6, 7}), 2), ZpSet(11, {8, 9, 10, 0, 1, 2, 3}));
  EXPECT_EQ(hfold(ZpSet(23, {1}), 3), ZpSet(23, {3}));
  EXPECT_EQ(hfold(ZpSet::interval(23, 15, 20), 3), ZpSet::interval(23, 22, 14));
}

TEST(ZpSet, SumsetMatchesOracle) {
  std::mt19937_64 rng(1);
  for (Residue p : {2u, 3u, 5u, 13u, 31u, 61u, 67u, 127u, 131u}) {
    for (int it = 0; it < 40; ++it) {
      const ZpSet a = random_set(rng, p), b = random_set(rng, p);
      EXPECT_EQ(oracle::elems(sumset(a, b)), oracle::sumset(oracle::elems(a), oracle::elems(b), p));
      const unsigned h = 1 + static_cast<unsigned>(rng() % 4);
      EXPECT_EQ(oracle::elems(hfold(a, h)), oracle::hfold(oracle::elems(a), h, p));
    }
  }
}

TEST(ZpSet, DilateExamples) {
  EXPECT_EQ(dilate(ZpSet(11, {3, 4, 5}), 8), ZpSet(11, {2, 7, 10}));
  const ZpSet a(11, {4, 5, 6, 7});
  EXPECT_EQ(dilate(a, 1), a);
  EXPECT_EQ(dilate(a, 10), a);
  EXPECT_THROW(dilate(a, 0), klsf::ParameterError);
  EXPECT_THROW(dilate(a, 22), klsf::ParameterError);
}

TEST(ZpSet, SumFreeExamples) {
  EXPECT_TRUE(is_kl_sumfree(ZpSet(11, {4, 5, 6, 7}), 2, 1));
  for (Residue p : {5u, 7u, 23u}) EXPECT_FALSE(is_kl_sumfree(ZpSet(p, {0}), 3, 1));
  EXPECT_TRUE(is_kl_sumfree(ZpSet::interval(23, 15, 20), 3, 1));
  EXPECT_THROW(is_kl_sumfree(ZpSet(11, {1}), 1, 1), klsf::ParameterError);
  EXPECT_THROW(is_kl_sumfree(ZpSet(11, {1}), 1, 2), klsf::ParameterError);
}

TEST(ZpSet, SumFreeMatchesOracle) {
  std::mt19937_64 rng(2);
  for (int it = 0; it < 400; ++it) {
    const Residue p = std::vector<Residue>{7, 11, 13, 17, 19, 23}[rng() % 6];
    ZpSet a(p);
    const std::size_t size = 1 + rng() % (p / 3);
    while (a.size() < size) a.insert(static_cast<Residue>(rng() % p));
    const unsigned l = 1 + static_cast<unsigned>(rng() % 2);
    const unsigned k = l + 1 + static_cast<unsigned>(rng() % 2);
    EXPECT_EQ(is_kl_sumfree(a, k, l), oracle::sumfree(oracle::elems(a), k, l, p));
  }
}

TEST(ZpSet, EdProfileAndAps) {
  const auto e = ed_profile(ZpSet(11, {4, 5, 6, 7}));
  EXPECT_EQ(e.e(1), 2u);
  EXPECT_EQ(is_ap(ZpSet(11, {4, 5, 6, 7})), std::vector<Residue>{1});
  EXPECT_EQ(ed_profile(ZpSet(11, {4, 6, 7})).e(1), 4u);
  ZpSet punctured = ZpSet::full(11);
  punctured.erase(0);
  EXPECT_EQ(is_ap(punctured), (std::vector<Residue>{1, 2, 3, 4, 5}));
}

TEST(ZpSet, IsApMatchesOracle) {
  std::mt19937_64 rng(3);
  for (Residue p : {5u, 7u, 11u, 13u, 17u}) {
    for (int it = 0; it < 300; ++it) {
      ZpSet a(p);
      if (it % 2) {
        a = ZpSet::progression(p, rng() % p, 1 + rng() % (p - 1), 2 + rng() % (p - 3));
      } else {
        a = random_set(rng, p);
      }
      if (a.size() < 2 || a.size() + 2 > p) continue;
      const auto got = is_ap(a);
      const auto want = oracle::ap_differences(oracle::elems(a), p);
      EXPECT_EQ(std::vector<std::uint32_t>(got.begin(), got.end()), want) << to_literal(a);
    }
  }
}

TEST(ZpSet, Covers) {
  const auto c = min_interval_cover(ZpSet(13, {0, 1, 2, 4}));
  EXPECT_EQ(c.start, 0u);
  EXPECT_EQ(c.length, 5u);
  EXPECT_EQ(min_ap_cover(ZpSet(11, {2, 7, 10})).length, 3u);
  ZpSet most = ZpSet::full(13);
  most.erase(5);
  EXPECT_EQ(min_ap_cover(most).length, 12u);

  std::mt19937_64 rng(4);
  for (Residue p : {7u, 11u, 13u}) {
    for (int it = 0; it < 100; ++it) {
      ZpSet a = random_set(rng, p);
      if (a.empty()) continue;
      const auto cover = min_ap_cover(a);
      EXPECT_EQ(cover.length, oracle::min_ap_length(oracle::elems(a), p));
      EXPECT_TRUE(a.is_subset_of(cover.as_set(p)));
    }
  }
}

TEST(ZpSet, Holes) {
  const ZpSet iv = ZpSet::interval(17, 3, 9);
  EXPECT_TRUE(holes(iv, min_interval_cover(iv)).empty());
  ZpSet a = ZpSet::interval(23, 12, 19);
  a.insert(10);
  a.insert(21);
  EXPECT_EQ(holes(a, {10, 1, 12}), (std::vector<std::size_t>{1, 1}));
  ZpSet b = ZpSet::interval(23, 14, 20);
  b.insert(10);
  b.insert(11);
  EXPECT_EQ(holes(b, {10, 1, 11}), std::vector<std::size_t>{2});
}

TEST(ZpSet, KlSumExamples) {
  EXPECT_TRUE(find_kl_sums(ZpSet::interval(23, 15, 20), 3, 1, 4).empty());
  const auto zero = find_kl_sums(ZpSet(11, {0}), 2, 1, 3);
  ASSERT_EQ(zero.size(), 1u);
  EXPECT_EQ(zero.front().left, (std::vector<Residue>{0, 0}));
  EXPECT_EQ(zero.front().right, std::vector<Residue>{0});
}

TEST(ZpSet, KlSumsMatchOracle) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 60; ++it) {
    const Residue p = std::vector<Residue>{11, 13, 17, 43}[rng() % 4];
    ZpSet c(p);
    const std::size_t size = 2 + rng() % 7;
    while (c.size() < size) c.insert(static_cast<Residue>(rng() % p));
    const unsigned l = 1 + static_cast<unsigned>(rng() % 2);
    const unsigned k = l + 1;
    const unsigned md = 1 + static_cast<unsigned>(rng() % 4);
    std::set<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> got;
    for (const auto& e : find_kl_sums(c, k, l, md)) got.insert({e.left, e.right});
    EXPECT_EQ(got, oracle::kl_sums(oracle::elems(c), k, l, p, md));
  }
}

TEST(ZpSet, LiteralRoundTrip) {
  EXPECT_EQ(parse_zp_set("p=23;[15,20]"), ZpSet::interval(23, 15, 20));
  EXPECT_EQ(parse_zp_set("p=23;[22,1]"), ZpSet(23, {22, 0, 1}));
  EXPECT_EQ(parse_zp_set("p=11; {2, 7,10}"), ZpSet(11, {2, 7, 10}));
  EXPECT_EQ(to_literal(ZpSet::interval(23, 15, 20)), "p=23;[15,20]");
  EXPECT_EQ(to_literal(ZpSet(11, {2, 7, 10})), "p=11;{2,7,10}");
  std::mt19937_64 rng(6);
  for (int it = 0; it < 100; ++it) {
    const ZpSet a = random_set(rng, 29);
    EXPECT_EQ(parse_zp_set(to_literal(a)), a);
  }
  EXPECT_THROW(parse_zp_set("p=12;{1}"), klsf::ParameterError);
  EXPECT_THROW(parse_zp_set("p=11;{11}"), klsf::ParameterError);
  EXPECT_THROW(parse_zp_set("p=11;{1,1}"), klsf::ParameterError);
  EXPECT_THROW(parse_zp_set("p=11;1,2"), klsf::ParameterError);
}

TEST(ZpSet, RejectsMixedModuli) {
  EXPECT_THROW(sumset(ZpSet(11, {1}), ZpSet(13, {1})), klsf::ParameterError);
  EXPECT_THROW(ZpSet(11, {11}), klsf::ParameterError);
  EXPECT_THROW(ZpSet(9), klsf::ParameterError);
}
