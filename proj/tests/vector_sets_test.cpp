#include <random>

#include <gtest/gtest.h>

#include "klsf/vec_set.hpp"
#include "oracles.hpp"

using namespace klsf;

namespace {

VecSet random_vset(std::mt19937_64& rng, Residue p, unsigned n, unsigned percent) {
  VecSet s(p, n);
  for (std::uint64_t i = 0; i < s.space_size(); ++i)
    if (rng() % 100 < percent) s.insert_index(i);
  return s;
}

VecSet strip(Residue p, Residue lo, Residue hi) { return VecSet::cylinder(ZpSet::interval(p, lo, hi), 2); }

}  // namespace

TEST(VecSet, SumsetExamples) {
  EXPECT_EQ(vhfold(strip(5, 1, 2), 2), strip(5, 2, 4));
  std::mt19937_64 rng(10);
  const VecSet a = random_vset(rng, 7, 2, 30);
  VecSet zero(7, 2);
  zero.insert({0, 0});
  EXPECT_EQ(vsumset(a, zero), a);
  const VecSet x = VecSet::from_points(3, 2, {{1, 0}}), y = VecSet::from_points(3, 2, {{0, 1}});
  EXPECT_EQ(vsumset(x, y), VecSet::from_points(3, 2, {{1, 1}}));
}

TEST(VecSet, SumsetMatchesOracle) {
  std::mt19937_64 rng(11);
  for (auto [p, n] : {std::pair{2u, 3u}, {3u, 2u}, {5u, 2u}, {7u, 2u}, {3u, 3u}, {67u, 2u}, {5u, 3u}}) {
    for (int it = 0; it < 10; ++it) {
      const VecSet a = random_vset(rng, p, n, p > 50 ? 2 : 20), b = random_vset(rng, p, n, p > 50 ? 2 : 20);
      EXPECT_EQ(oracle::points(vsumset(a, b)), oracle::vsumset(oracle::points(a), oracle::points(b), p));
      if (a.empty()) continue;
      EXPECT_EQ(oracle::points(vhfold(a, 3)), oracle::vhfold(oracle::points(a), 3, p));
      EXPECT_EQ(is_kl_sumfree(a, 2, 1), oracle::vsumfree(oracle::points(a), 2, 1, p));
    }
  }
}

TEST(VecSet, AgreesWithZpSetInDimensionOne) {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 50; ++it) {
    const VecSet a = random_vset(rng, 31, 1, 20), b = random_vset(rng, 31, 1, 20);
    EXPECT_EQ(vsumset(a, b).to_zp(), sumset(a.to_zp(), b.to_zp()));
  }
}

TEST(VecSet, Automorphisms) {
  std::mt19937_64 rng(13);
  const VecSet a = random_vset(rng, 7, 2, 30);
  EXPECT_EQ(apply_automorphism(a, ModMatrix::identity(7, 2)), a);
  const VecSet line = random_vset(rng, 11, 1, 30);
  EXPECT_EQ(apply_automorphism(line, ModMatrix::from_rows(11, {{8}})).to_zp(), dilate(line.to_zp(), 8));
  const auto swap = ModMatrix::from_rows(5, {{0, 1}, {1, 0}});
  VecSet expect(5, 2);
  for (Residue x = 0; x < 5; ++x)
    for (Residue y : {1u, 2u}) expect.insert({x, y});
  EXPECT_EQ(apply_automorphism(strip(5, 1, 2), swap), expect);
  EXPECT_THROW(apply_automorphism(a, ModMatrix::from_rows(7, {{1, 2}, {2, 4}})), ParameterError);
}

TEST(VecSet, Decompositions) {
  const VecSet a = strip(5, 1, 2);
  const auto natural = decompose(a, {{1, 0}, {{0, 1}}});
  EXPECT_EQ(natural.support, ZpSet(5, {1, 2}));
  EXPECT_EQ(natural.weight, 2u);
  EXPECT_EQ(natural.parts[1], VecSet::full(5, 1));
  EXPECT_EQ(natural.parts[2], VecSet::full(5, 1));
  const auto other = decompose(a, {{0, 1}, {{1, 0}}});
  EXPECT_EQ(other.weight, 5u);
  for (Residue i = 0; i < 5; ++i) EXPECT_EQ(other.part_size(i), 2u);
  const auto empty = decompose(VecSet(5, 2), {{1, 0}, {{0, 1}}});
  EXPECT_EQ(empty.weight, 0u);
  EXPECT_EQ(empty.total(), 0u);
}

TEST(VecSet, DecompositionPartsCoverTheSet) {
  std::mt19937_64 rng(14);
  const VecSet a = random_vset(rng, 7, 2, 40);
  const auto planes = hyperplane_decompositions(7, 2);
  EXPECT_EQ(planes.size(), 8u);
  for (const auto& hp : planes) {
    const auto prof = decompose(a, hp.decomposition);
    EXPECT_EQ(prof.total(), a.size());
    // v has <t,v> = 1, so x lies in part <t,x>
    for (const auto& x : a.points()) {
      std::uint64_t dot = 0;
      for (std::size_t i = 0; i < x.size(); ++i) dot += std::uint64_t{hp.normal[i]} * x[i];
      const Residue part = static_cast<Residue>(dot % 7);
      EXPECT_GT(prof.part_size(part), 0u);
    }
  }
}

TEST(VecSet, SymGroup) {
  VecSet coset(5, 2);
  for (Residue y = 0; y < 5; ++y) coset.insert({3, y});
  VecSet h(5, 2);
  for (Residue y = 0; y < 5; ++y) h.insert({0, y});
  EXPECT_EQ(sym_group(coset), h);
  const VecSet s = VecSet::from_zp(ZpSet(5, {1, 3}));
  EXPECT_EQ(sym_group(s), VecSet::from_zp(ZpSet(5, {0})));
  EXPECT_EQ(sym_group(VecSet::full(5, 2)), VecSet::full(5, 2));
}

TEST(VecSet, SymGroupMatchesOracle) {
  std::mt19937_64 rng(15);
  for (int it = 0; it < 30; ++it) {
    const VecSet s = random_vset(rng, 3, 2, 60);
    const auto pts = oracle::points(s);
    oracle::Pts stab;
    for (Residue a = 0; a < 3; ++a)
      for (Residue b = 0; b < 3; ++b) {
        if (oracle::vsumset(pts, {{a, b}}, 3) == pts) stab.insert({a, b});
      }
    if (s.empty()) continue;
    EXPECT_EQ(oracle::points(sym_group(s)), stab);
  }
}

TEST(VecSet, Kneser) {
  const VecSet a = VecSet::from_zp(ZpSet::interval(13, 2, 5)), b = VecSet::from_zp(ZpSet::interval(13, 7, 9));
  const auto g = kneser_gap({a, b});
  EXPECT_TRUE(g.holds());
  EXPECT_EQ(g.stabilizer.size(), 1u);
  EXPECT_EQ(g.lhs, g.rhs);
  VecSet h(5, 2);
  for (Residue y = 0; y < 5; ++y) h.insert({0, y});
  const auto eq = kneser_gap({h, h, h});
  EXPECT_EQ(eq.lhs, 5u);
  EXPECT_EQ(eq.rhs, 5u);
  const auto strips = kneser_gap({strip(5, 1, 2), strip(5, 1, 2)});
  EXPECT_TRUE(strips.holds());
  EXPECT_TRUE(h.is_subset_of(strips.stabilizer));
}

TEST(VecSet, SupportContainment) {
  auto profile = [](const ZpSet& s) { return decompose(VecSet::from_zp(s), natural_decomposition(1)); };
  EXPECT_EQ(support_contained(profile(ZpSet::interval(11, 4, 7)), profile(ZpSet::interval(11, 4, 7))), 1u);
  EXPECT_EQ(support_contained(profile(ZpSet(11, {3, 4, 5})), profile(ZpSet(11, {2, 7, 10}))), 8u);
  EXPECT_FALSE(support_contained(profile(ZpSet::interval(11, 3, 7)), profile(ZpSet::interval(11, 4, 7))).has_value());
  EXPECT_THROW(support_contained(profile(ZpSet::interval(11, 1, 10)), profile(ZpSet::full(11))), HypothesisError);
}

TEST(VecSet, LiteralsAndLimits) {
  const VecSet a = VecSet::from_points(5, 2, {{0, 1}, {4, 3}});
  EXPECT_EQ(to_literal(a), "p=5;n=2;{(0,1),(4,3)}");
  EXPECT_EQ(parse_vec_set(to_literal(a)), a);
  EXPECT_EQ(parse_vec_set("p=23;[15,20]").to_zp(), ZpSet::interval(23, 15, 20));
  EXPECT_THROW(parse_vec_set("p=5;n=2;{(0,5)}"), ParameterError);
  EXPECT_THROW(parse_vec_set("p=5;n=2;{(0,1),(0,1)}"), ParameterError);
  EXPECT_THROW(parse_vec_set("p=5;n=2;{(0,1,2)}"), ParameterError);
  EXPECT_THROW(VecSet(101, 4), UnsupportedError);
  EXPECT_THROW(vsumset(VecSet(5, 2), VecSet(5, 1)), ParameterError);
}
