#include <random>

#include <gtest/gtest.h>

#include "klsf/search.hpp"
#include "klsf/spectral.hpp"
#include "oracles.hpp"

using namespace klsf;

namespace {

constexpr double kTol = 1e-10;

VecSet span_set(Residue p, unsigned n, const std::vector<Point>& basis) {
  VecSet h(p, n);
  h.insert(Point(n, 0));
  for (const auto& b : basis) {
    VecSet next = h;
    for (Residue c = 1; c < p; ++c) {
      Point shift(n);
      for (unsigned i = 0; i < n; ++i) shift[i] = mod_mul(b[i], c, p);
      next = next.set_union(h.translated(shift));
    }
    h = next;
  }
  return h;
}

}  // namespace

TEST(Spectrum, FullSpaceAndPoint) {
  const auto full = spectrum(VecSet::full(5, 2));
  EXPECT_NEAR(std::abs(full.coeffs[0] - 1.0), 0, kTol);
  EXPECT_NEAR(full.max_nonzero(), 0, kTol);
  VecSet origin(5, 2);
  origin.insert({0, 0});
  for (const auto& c : spectrum(origin).coeffs) EXPECT_NEAR(std::abs(c - Complex(1.0 / 25)), 0, kTol);
}

TEST(Spectrum, CosetIsSupportedOnAnnihilator) {
  const Residue p = 5;
  const VecSet h = span_set(p, 2, {{1, 2}});
  const VecSet coset = h.translated({3, 1});
  const auto s = spectrum(coset);
  const VecSet shape(p, 2);
  for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
    const auto t = shape.point_of(i);
    const bool annihilates = (t[0] + 2 * t[1]) % p == 0;
    EXPECT_NEAR(std::abs(s.coeffs[i]), annihilates ? 5.0 / 25 : 0.0, kTol);
  }
}

TEST(Spectrum, MatchesDirectEvaluation) {
  std::mt19937_64 rng(50);
  for (auto [p, n] : {std::pair{7u, 1u}, {31u, 1u}, {5u, 2u}, {7u, 2u}, {3u, 3u}}) {
    VecSet a(p, n);
    for (std::uint64_t i = 0; i < a.space_size(); ++i)
      if (rng() % 3 == 0) a.insert_index(i);
    const auto s = spectrum(a);
    const auto pts = oracle::points(a);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
      const auto t = a.point_of(i);
      EXPECT_NEAR(std::abs(s.coeffs[i] - oracle::dft(pts, {t.begin(), t.end()}, p, n)), 0, 1e-12);
    }
    EXPECT_NEAR(s.plancherel_sum(), s.alpha, kTol);
  }
}

TEST(Bound, Formula) {
  EXPECT_NEAR(sumfree_spectral_bound(0.5, 2, 1), 0.5, 1e-15);
  EXPECT_LT(sumfree_spectral_bound(1e-9, 3, 1), 1e-6);
  for (unsigned kl : {3u, 4u, 5u, 7u}) {
    const double alpha = 1.0 / (kl + 1);
    const double closed = alpha * std::pow(1.0 / kl, 1.0 / (kl - 2));
    EXPECT_NEAR(sumfree_spectral_bound(alpha, kl - 1, 1), closed, 1e-14);
  }
  EXPECT_THROW(sumfree_spectral_bound(1.0, 2, 1), ParameterError);
  EXPECT_THROW(sumfree_spectral_bound(0.5, 1, 1), ParameterError);
}

TEST(Lemma, ExtremalSetsPass) {
  for (auto [k, l] : {std::pair{2u, 1u}, {3u, 1u}, {3u, 2u}, {4u, 1u}})
    for (Residue p : {7u, 11u, 13u, 17u, 19u, 23u}) {
      if (p < k + l + 2) continue;
      for (const auto& s : enumerate_max(Params::make(k, l, p)).extremal) {
        const auto c = verify_spectral_lemma(VecSet::from_zp(s), k, l);
        EXPECT_TRUE(c.applicable);
        EXPECT_TRUE(c.pass) << to_literal(s);
      }
    }
}

TEST(Lemma, SingletonAndNonSumFree) {
  const auto c = verify_spectral_lemma(VecSet::from_zp(ZpSet(13, {1})), 3, 1);
  EXPECT_TRUE(c.applicable);
  EXPECT_NEAR(c.max_nonzero, 1.0 / 13, kTol);
  EXPECT_TRUE(c.pass);
  EXPECT_FALSE(verify_spectral_lemma(VecSet::from_zp(ZpSet(13, {1, 2})), 2, 1).applicable);
}

TEST(KernelDecomposition, Examples) {
  const auto d1 = kernel_decomposition({1, 0}, 7);
  EXPECT_EQ(d1.v, (Point{6, 0}));
  ASSERT_EQ(d1.basis.size(), 1u);
  EXPECT_EQ(d1.basis[0][0], 0u);

  const auto d2 = kernel_decomposition({0, 1}, 7);
  ASSERT_EQ(d2.basis.size(), 1u);
  EXPECT_EQ(d2.basis[0][1], 0u);

  const auto d3 = kernel_decomposition({1, 1}, 5);
  EXPECT_EQ(d3.v, (Point{4, 0}));
  ASSERT_EQ(d3.basis.size(), 1u);
  EXPECT_EQ(span_set(5, 2, d3.basis), span_set(5, 2, {{1, 4}}));
  EXPECT_THROW(kernel_decomposition({0, 0}, 5), ParameterError);
}
