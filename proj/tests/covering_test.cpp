#include <random>

#include <gtest/gtest.h>

#include "klsf/covering.hpp"
#include "oracles.hpp"

using namespace klsf;

TEST(Covering, Examples) {
  const auto iv = covering_verdict(ZpSet::interval(17, 3, 8));
  EXPECT_TRUE(iv.covered);
  EXPECT_EQ(iv.target_len, 6u);
  EXPECT_EQ(iv.achieved_len, 6u);

  const auto v = covering_verdict(ZpSet(13, {0, 1, 2, 4}));
  EXPECT_EQ(v.doubling, 8u);
  EXPECT_EQ(v.target_len, 5u);
  EXPECT_EQ(v.achieved_len, 5u);
  EXPECT_TRUE(v.covered);

  ZpSet most = ZpSet::full(13);
  most.erase(6);
  const auto punctured = covering_verdict(most);
  EXPECT_EQ(punctured.doubling, 13u);
  EXPECT_EQ(punctured.target_len, 2u);
  EXPECT_EQ(punctured.achieved_len, 12u);
  EXPECT_FALSE(punctured.covered);
  EXPECT_THROW(covering_verdict(ZpSet(13)), ParameterError);
}

TEST(Covering, MatchesOracle) {
  std::mt19937_64 rng(40);
  for (int it = 0; it < 300; ++it) {
    const Residue p = std::vector<Residue>{7, 11, 13, 17}[rng() % 4];
    ZpSet a(p);
    const std::size_t size = 1 + rng() % (p / 2);
    while (a.size() < size) a.insert(static_cast<Residue>(rng() % p));
    const auto e = oracle::elems(a);
    const std::size_t dbl = oracle::sumset(e, e, p).size();
    const std::size_t cover = oracle::min_ap_length(e, p);
    const auto v = covering_verdict(a);
    EXPECT_EQ(v.doubling, dbl);
    EXPECT_EQ(v.achieved_len, cover);
    EXPECT_EQ(v.covered, cover <= dbl - a.size() + 1);
  }
}

TEST(Density, Parse) {
  const auto c = Density::parse("1/10.7");
  EXPECT_EQ(c.num * 107, c.den * 10);
  EXPECT_EQ(c.size_cap(101), 9u);
  EXPECT_EQ(Density::parse("0.25").size_cap(20), 5u);
  EXPECT_THROW(Density::parse("3/2"), ParameterError);
  EXPECT_THROW(Density::parse("1/0"), ParameterError);
  EXPECT_THROW(Density::parse("a/3"), ParameterError);
  EXPECT_THROW(Density::parse("0"), ParameterError);
}

TEST(TauScan, TinyDensityIsAlwaysCovered) {
  const auto s = tau_scan_exhaustive(31, Density::parse("1/10.7"));
  EXPECT_DOUBLE_EQ(s.tau_feasible, 1.0);
  EXPECT_TRUE(s.violations.empty());
  EXPECT_TRUE(s.monotone);
}

TEST(TauScan, SmallTauHasNoViolations) {
  for (Residue p : {7u, 11u, 13u, 17u, 19u, 23u}) {
    const auto s = tau_scan_exhaustive(p, Density{1, 3});
    EXPECT_EQ(s.violations_at(1), 0u) << p;
    EXPECT_GE(s.tau_feasible, 0.05);
    EXPECT_TRUE(s.monotone);
    for (std::size_t j = 1; j < s.rows.size(); ++j) EXPECT_GE(s.rows[j].tested, s.rows[j - 1].tested);
  }
}

TEST(TauScan, AffineReductionAgreesWithFullScan) {
  // Whether any violation exists at each τ, checked against every subset of Z_p.
  for (Residue p : {11u, 13u}) {
    const Density c{2, 5};
    const auto scan = tau_scan_exhaustive(p, c);
    const std::size_t cap = c.size_cap(p);
    std::vector<bool> any(21, false), tested(21, false);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p); ++mask) {
      const auto size = static_cast<std::size_t>(__builtin_popcountll(mask));
      if (size < 2 || size > cap) continue;
      oracle::Elems a;
      for (Residue i = 0; i < p; ++i)
        if ((mask >> i) & 1) a.insert(i);
      const std::size_t dbl = oracle::sumset(a, a, p).size();
      const bool covered = oracle::min_ap_length(a, p) + size <= dbl + 1;
      for (unsigned j = 1; j <= 20; ++j)
        if (20 * dbl + 60 <= (40 + j) * size) {
          tested[j] = true;
          if (!covered) any[j] = true;
        }
    }
    for (unsigned j = 1; j <= 20; ++j) {
      EXPECT_EQ(scan.rows[j - 1].violations > 0, any[j]) << "p=" << p << " j=" << j;
      EXPECT_EQ(scan.rows[j - 1].tested > 0, tested[j]) << "p=" << p << " j=" << j;
    }
  }
}

TEST(TauScan, SampledIsDeterministic) {
  const auto a = tau_scan_sampled(101, Density::parse("1/10.7"), 2000, 99);
  const auto b = tau_scan_sampled(101, Density::parse("1/10.7"), 2000, 99);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].tested, b.rows[i].tested);
    EXPECT_EQ(a.rows[i].violations, b.rows[i].violations);
  }
  EXPECT_EQ(a.sets_examined, 2000u);
  EXPECT_GT(a.rows.back().tested, 0u);
}

TEST(TauScan, Limits) {
  EXPECT_THROW(tau_scan_exhaustive(37, Density{1, 3}), ParameterError);
  EXPECT_THROW(tau_scan_exhaustive(15, Density{1, 3}), ParameterError);
}
