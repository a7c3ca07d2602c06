#include <random>

#include <gtest/gtest.h>

#include "klsf/constructions.hpp"
#include "oracles.hpp"

using namespace klsf;

namespace {

bool oracle_sumfree(const VecSet& a, const Params& q) { return oracle::vsumfree(oracle::points(a), q.k, q.l, q.p); }

}  // namespace

TEST(Cuboid, Examples) {
  const auto q21 = Params::make(2, 1, 11);
  EXPECT_EQ(cuboid_start(q21, 0), 4u);
  EXPECT_EQ(gen_cuboid({q21, 0}).to_zp(), ZpSet::interval(11, 4, 7));
  const auto q31 = Params::make(3, 1, 23);
  EXPECT_EQ(cuboid_start(q31, 0), 15u);
  EXPECT_EQ(gen_cuboid({q31, 0}).to_zp(), ZpSet::interval(23, 15, 20));
  const auto q32 = Params::make(3, 2, 17);
  EXPECT_EQ(cuboid_start(q32, 0), 7u);
  EXPECT_EQ(gen_cuboid({q32, 0}).to_zp(), ZpSet::interval(17, 7, 10));
}

TEST(Cuboid, TwoDimensionalIsACylinder) {
  const auto q = Params::make(2, 1, 11, 2);
  const VecSet c = gen_cuboid({q, 0});
  EXPECT_EQ(c, VecSet::cylinder(ZpSet::interval(11, 4, 7), 2));
}

TEST(Cuboid, SweepAgainstOracle) {
  for (auto [k, l] : {std::pair{2u, 1u}, {3u, 1u}, {3u, 2u}, {4u, 1u}, {4u, 3u}, {5u, 2u}})
    for (Residue p : {7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
      if (p < k + l + 2) continue;
      const auto q = Params::make(k, l, p);
      if (!q.cuboid_range()) {
        EXPECT_THROW(gen_cuboid({q, 0}), ParameterError) << q.to_string();
        continue;
      }
      for (unsigned j = 0; j < q.extremal_count(); ++j) {
        const VecSet c = gen_cuboid({q, j});
        EXPECT_EQ(c.size(), q.m() + 1u);
        EXPECT_TRUE(oracle_sumfree(c, q)) << q.to_string() << " j=" << j;
      }
      EXPECT_THROW(gen_cuboid({q, q.extremal_count()}), ParameterError);
    }
}

TEST(Types, Type1Example) {
  const auto q = Params::make(3, 1, 23);
  const auto g = gen_type({Structure::Type1, q, {}, {}, 0, {}});
  EXPECT_EQ(g.set.to_zp(), ZpSet::interval(23, 5, 9));
  EXPECT_THROW(gen_type({Structure::Type1, q, 6u, {}, 0, {}}), ParameterError);
}

TEST(Types, Type3Support) {
  for (Residue p : {13u, 43u, 53u}) {  // p = 5m+3
    const auto q = Params::make(3, 2, p);
    const auto g = gen_type({Structure::Type3, q, {}, {}, 0, {}});
    const Residue a = type3_start(q);
    ZpSet expect = ZpSet::interval(p, std::int64_t{a} - 1, std::int64_t{a} + q.m());
    expect.erase(a);
    expect.erase(mod_reduce(std::int64_t{a} + q.m() - 1, p));
    EXPECT_EQ(g.support, expect);
    EXPECT_TRUE(oracle_sumfree(g.set, q));
  }
}

TEST(Types, Type5Example) {
  const auto q = Params::make(3, 1, 23, 2);
  EXPECT_EQ(type5_start(q), mod_mul(7, mod_inv(2, 23), 23));
  const auto g = gen_type({Structure::Type5, q, {}, {}, 1, {Point{1}}});
  EXPECT_EQ(g.set.size(), 5u * 23);
  EXPECT_TRUE(oracle_sumfree(g.set, q));
}

TEST(Types, NamedErrors) {
  const auto q = Params::make(3, 1, 23, 2);
  try {
    gen_type({Structure::Type5, q, {}, {}, 1, {Point{0}}});
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("0∉3P"), std::string::npos);
  }
  EXPECT_THROW(gen_type({Structure::Type2, Params::make(3, 2, 17, 2), {}, {}, 0, {}}), ParameterError);
  EXPECT_THROW(gen_type({Structure::Type2, Params::make(2, 1, 11, 1), {}, {}, 0, {}}), ParameterError);
  EXPECT_THROW(gen_type({Structure::Type2, Params::make(2, 1, 11, 2), {}, {Point{1}}, 0, {}}), ParameterError);
  EXPECT_THROW(gen_type({Structure::Type3, Params::make(3, 1, 23), {}, {}, 0, {}}), ParameterError);
  EXPECT_THROW(gen_type({Structure::Type4, Params::make(3, 2, 17, 2), {}, {}, 0, {}}), ParameterError);
  EXPECT_THROW(gen_type({Structure::RZ, Params::make(2, 1, 11, 2), {}, {}, 1, {Point{0}}}), ParameterError);
  EXPECT_THROW(gen_type({Structure::RZ, Params::make(2, 1, 11, 1), {}, {}, 0, {Point{}}}), ParameterError);
}

TEST(Types, RzZeroDimensionalIsFlagged) {
  const auto g = gen_type({Structure::RZ, Params::make(2, 1, 11), {}, {}, 0, {}});
  EXPECT_EQ(g.set.to_zp(), ZpSet::interval(11, 3, 5));
  EXPECT_FALSE(g.flags.empty());
}

TEST(Types, SweepAgainstOracle) {
  std::size_t checked = 0;
  for (auto [k, l] : {std::pair{2u, 1u}, {3u, 1u}, {3u, 2u}, {4u, 1u}})
    for (Residue p : {5u, 7u, 11u, 13u, 17u}) {
      if (p < k + l + 2) continue;
      for (unsigned n = 1; n <= 2; ++n) {
        const auto q = Params::make(k, l, p, n);
        for (const auto& spec : default_type_specs(q)) {
          Generated g;
          try {
            g = gen_type(spec);
          } catch (const ParameterError&) {
            continue;
          }
          ++checked;
          EXPECT_EQ(g.set.size(), q.m() * q.layer());
          EXPECT_TRUE(oracle_sumfree(g.set, q)) << structure_name(spec.which) << " " << q.to_string();
        }
      }
    }
  EXPECT_GT(checked, 20u);
}

TEST(Triviality, Examples) {
  const auto q = Params::make(2, 1, 11);
  EXPECT_TRUE(nontriviality_check(VecSet::from_zp(ZpSet(11, {2, 7, 10})), q).nontrivial);
  const auto v = nontriviality_check(VecSet::from_zp(ZpSet(11, {2, 3, 8})), q);
  ASSERT_FALSE(v.nontrivial);
  ASSERT_TRUE(v.witness);
  EXPECT_TRUE(apply_automorphism(VecSet::from_zp(ZpSet(11, {2, 3, 8})), v.witness->map)
                  .is_subset_of(gen_cuboid({q, v.witness->j})));
}

TEST(Triviality, MatchesDilationOracle) {
  // n = 1: trivial iff some dilate lies in an extremal interval.
  std::mt19937_64 rng(20);
  for (auto [k, l, p] : {std::tuple{2u, 1u, 11u}, {3u, 1u, 23u}, {3u, 2u, 19u}}) {
    const auto q = Params::make(k, l, p);
    const auto ivs = extremal_intervals(q);
    for (int it = 0; it < 200; ++it) {
      ZpSet a(p);
      const std::size_t size = 1 + rng() % q.m();
      while (a.size() < size) a.insert(1 + static_cast<Residue>(rng() % (p - 1)));
      bool trivial = false;
      for (Residue c = 1; c < p && !trivial; ++c) {
        const auto d = oracle::dilate(oracle::elems(a), c, p);
        for (const auto& iv : ivs) {
          const auto e = oracle::elems(iv);
          trivial = trivial || std::includes(e.begin(), e.end(), d.begin(), d.end());
        }
      }
      EXPECT_EQ(nontriviality_check(VecSet::from_zp(a), q).nontrivial, !trivial) << to_literal(a);
    }
  }
}

TEST(Triviality, CuboidSubsetsAreTrivialInAnyDimension) {
  std::mt19937_64 rng(21);
  const auto q = Params::make(3, 1, 11, 3);
  const VecSet cube = gen_cuboid({q, 0});
  for (int it = 0; it < 5; ++it) {
    VecSet sub(11, 3);
    cube.for_each_index([&](std::uint64_t i) {
      if (rng() % 3 == 0) sub.insert_index(i);
    });
    if (sub.empty()) continue;
    const auto m = ModMatrix::from_rows(11, {{1, 2, 0}, {0, 1, 5}, {3, 0, 1}});
    EXPECT_FALSE(nontriviality_check(apply_automorphism(sub, m), q).nontrivial);
  }
}

TEST(Triviality, TypesAreNontrivial) {
  const auto q = Params::make(3, 2, 43, 2);
  for (const auto& spec : default_type_specs(q)) EXPECT_TRUE(nontriviality_check(gen_type(spec).set, q).nontrivial);
}

TEST(Overlap, DistinctTypesCertified) {
  const auto q = Params::make(3, 2, 43, 2);
  const auto t1 = gen_type({Structure::Type1, q, {}, {}, 0, {}});
  const auto t3 = gen_type({Structure::Type3, q, {}, {}, 0, {}});
  const auto t4 = gen_type({Structure::Type4, q, {}, {}, 0, {}});
  EXPECT_TRUE(certify_non_isomorphic(t1, t3).certified);
  EXPECT_TRUE(certify_non_isomorphic(t3, t4).certified);
  EXPECT_TRUE(certify_non_isomorphic(t1, t4).certified);
}
