#include <cmath>

#include <gtest/gtest.h>

#include "dss/exact_combinatorics.hpp"
#include "dss/moments.hpp"
#include "oracles.hpp"

using dss::BigInt;
using dss::Rational;

namespace {

using Support = std::vector<std::pair<std::int64_t, BigInt>>;

dss::VectorSequence all_m(unsigned n, int k, std::int64_t m) {
  dss::VectorSequence s;
  s.k = k;
  s.bound = m;
  s.vectors.assign(n, dss::Vec(static_cast<std::size_t>(k), m));
  return s;
}

}  // namespace

TEST(SignedSum, Examples) {
  const std::vector<std::int64_t> one{1}, two{1, 1}, mixed{1, 2};
  EXPECT_EQ(dss::signed_sum_distribution(one).support, (Support{{-1, 1}, {1, 1}}));
  EXPECT_EQ(dss::signed_sum_distribution(two).support, (Support{{-2, 1}, {0, 2}, {2, 1}}));
  EXPECT_EQ(dss::signed_sum_distribution(mixed).support, (Support{{-3, 1}, {-1, 1}, {1, 1}, {3, 1}}));
  EXPECT_EQ(dss::signed_sum_distribution(two).count(0), 2);
  EXPECT_EQ(dss::signed_sum_distribution(two).count(1), 0);
}

TEST(SignedSum, SymmetricAndTotalsPowerOfTwo) {
  dss::Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<std::int64_t> coords(static_cast<std::size_t>(dss::uniform_in(rng, 0, 18)));
    for (auto& c : coords) c = dss::uniform_in(rng, 0, 30);
    const auto d = dss::signed_sum_distribution(coords);
    EXPECT_EQ(d.total(), dss::pow2(static_cast<unsigned>(coords.size())));
    for (const auto& [v, c] : d.support) EXPECT_EQ(d.count(-v), c);
  }
}

TEST(SignedSum, SparseAndDensePathsAgree) {
  // {1000, 2000, 4001}: 8 patterns over a width-14003 table takes the sparse path
  const std::vector<std::int64_t> spread{1000, 2000, 4001};
  const auto d = dss::signed_sum_distribution(spread);
  EXPECT_EQ(d.support.size(), 8u);
  EXPECT_EQ(d.count(-7001), 1);
  EXPECT_EQ(d.count(1001 + 2000 - 4001 + 1999), 0);
  // a dense case with the same structure scaled down
  const std::vector<std::int64_t> tight{1, 2, 4};
  const auto t = dss::signed_sum_distribution(tight);
  ASSERT_EQ(t.support.size(), 8u);
}

TEST(SignedSum, LongSequencesUseBigCounts) {
  const std::vector<std::int64_t> ones(70, 1);
  const auto d = dss::signed_sum_distribution(ones);
  EXPECT_EQ(d.total(), dss::pow2(70));
  EXPECT_EQ(d.count(0), dss::binomial(70, 35));
}

TEST(SignedSum, BudgetAndDomain) {
  const std::vector<std::int64_t> wide{3'000'000, 3'000'000, 3'000'000};
  EXPECT_NO_THROW(dss::signed_sum_distribution(wide));  // sparse path
  std::vector<std::int64_t> dense(30, 100'000);
  EXPECT_THROW(dss::signed_sum_distribution(dense), dss::ResourceError);
  const std::vector<std::int64_t> negative{-1};
  EXPECT_THROW(dss::signed_sum_distribution(negative), std::invalid_argument);
}

TEST(ExactMoment, Examples) {
  EXPECT_EQ(*dss::exact_moment(dss::scalar_sequence({7}), 1).exact, Rational(7, 2));
  EXPECT_EQ(*dss::exact_moment(dss::scalar_sequence({1, 1}), 1).exact, Rational(1, 2));
  EXPECT_EQ(*dss::exact_moment(dss::scalar_sequence({1, 2, 4}), 2).exact, Rational(21, 4));
  const auto m = dss::exact_moment(dss::scalar_sequence({1, 2, 4}), 3);
  EXPECT_EQ(m.provenance, dss::Provenance::exact_dp);
  EXPECT_FALSE(m.std_error);
  EXPECT_THROW(dss::exact_moment(dss::scalar_sequence({1}), 4), std::invalid_argument);
}

TEST(ExactMoment, MatchesSignEnumeration) {
  dss::Rng rng(5);
  for (int rep = 0; rep < 60; ++rep) {
    const auto n = static_cast<std::size_t>(dss::uniform_in(rng, 1, 10));
    const int k = static_cast<int>(dss::uniform_in(rng, 1, 3));
    const auto s = oracle::random_sequence(rng, n, k, dss::uniform_in(rng, 0, 9));
    for (unsigned p = 1; p <= 3; ++p) EXPECT_EQ(*dss::exact_moment(s, p).exact, oracle::enumerate_moment(s, p));
  }
}

TEST(ExactMoment, ExtremalConfigurationMatchesClosedForms) {
  for (unsigned n = 1; n <= 20; ++n)
    for (int k = 1; k <= 3; ++k)
      for (std::int64_t m : {1, 3, 10}) {
        const auto s = all_m(n, k, m);
        const Rational scale = Rational(BigInt(k)) / Rational(dss::pow2(n));
        EXPECT_EQ(*dss::exact_moment(s, 1).exact, scale * m * dss::closed_form_s1(n));
        EXPECT_EQ(*dss::exact_moment(s, 3).exact, scale * m * m * m * dss::closed_form_s3(n));
        EXPECT_EQ(*dss::exact_moment(s, 3).exact, *dss::extremal_moment(n, k, m, 3).exact);
      }
}

TEST(ExactMoment, RandomSequencesRespectExtremalUpperBounds) {
  dss::Rng rng(17);
  for (int rep = 0; rep < 500; ++rep) {
    const auto n = static_cast<unsigned>(dss::uniform_in(rng, 1, 12));
    const int k = static_cast<int>(dss::uniform_in(rng, 1, 3));
    const std::int64_t m = dss::uniform_in(rng, 1, 12);
    const auto s = oracle::random_sequence(rng, n, k, m);
    const Rational scale = Rational(BigInt(k)) / Rational(dss::pow2(n));
    const Rational first_cap = scale * m * dss::closed_form_s1(n);
    const Rational third_cap = scale * m * m * m * dss::s3_even_majorant(n);
    EXPECT_LE(*dss::exact_moment(s, 1).exact, first_cap);
    EXPECT_LE(*dss::exact_moment(s, 3).exact, third_cap);
  }
}

TEST(MonteCarlo, ReproducibleAndConsistent) {
  const auto s = dss::scalar_sequence({3, 5, 6, 7});
  const auto a = dss::mc_estimate(s, 1.0, 20000, 99);
  const auto b = dss::mc_estimate(s, 1.0, 20000, 99);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(*a.std_error, *b.std_error);
  EXPECT_EQ(a.provenance, dss::Provenance::monte_carlo);
  EXPECT_EQ(a.samples, 20000u);
  EXPECT_FALSE(a.exact);
  EXPECT_GT(*a.std_error, 0.0);
  EXPECT_NE(a.value, dss::mc_estimate(s, 1.0, 20000, 100).value);

  const double exact = dss::exact_moment(s, 1).value;
  EXPECT_LE(std::abs(a.value - exact), 5 * *a.std_error);
}

TEST(MonteCarlo, SingleSampleHasNoStdError) {
  const auto m = dss::mc_estimate(dss::scalar_sequence({1, 2}), 2.0, 1, 1);
  EXPECT_FALSE(m.std_error);
  EXPECT_THROW(dss::mc_estimate(dss::scalar_sequence({1}), 2.0, 0, 1), std::invalid_argument);
}

TEST(MonteCarlo, ConstantMagnitudeHasZeroSpread) {
  // one element: |X| is always M/2
  const auto m = dss::mc_estimate(dss::scalar_sequence({6}), 1.5, 100, 4);
  EXPECT_DOUBLE_EQ(m.value, std::pow(3.0, 1.5));
  EXPECT_EQ(*m.std_error, 0.0);
}

TEST(MonteCarlo, CoverageOverSeeds) {
  const auto s = dss::parse_sequence("4 2 6\n1 6\n2 0\n5 3\n6 6\n");
  const double exact = dss::exact_moment(s, 3).value;
  int covered = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto m = dss::mc_estimate(s, 3.0, 4000, seed);
    if (std::abs(m.value - exact) <= 3 * *m.std_error) ++covered;
  }
  EXPECT_GE(covered, 97);
}

TEST(Variance, Identity) {
  EXPECT_TRUE(dss::variance_identity_check(dss::scalar_sequence({5})).pass);
  const auto r = dss::variance_identity_check(dss::scalar_sequence({1, 2, 4}));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.predicted, Rational(21, 4));
  const auto plane = dss::parse_sequence("2 2 1\n1 0\n0 1\n");
  EXPECT_EQ(dss::variance_identity_check(plane).moment, Rational(1, 2));

  dss::Rng rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const auto s = oracle::random_sequence(rng, static_cast<std::size_t>(dss::uniform_in(rng, 1, 14)),
                                           static_cast<int>(dss::uniform_in(rng, 1, 3)), dss::uniform_in(rng, 0, 40));
    EXPECT_TRUE(dss::variance_identity_check(s).pass);
  }
}

TEST(Convexity, Probe) {
  EXPECT_TRUE(dss::convexity_probe(4, 8, 200, 1).pass);
  EXPECT_TRUE(dss::convexity_probe(1, 9, 50, 2).pass);
  EXPECT_TRUE(dss::convexity_probe(8, 5, 200, 3).pass);
  EXPECT_EQ(dss::convexity_probe(4, 8, 200, 1).trials, 200u);
  EXPECT_TRUE(dss::convexity_probe(3, 0, 10, 4).pass);
  EXPECT_THROW(dss::convexity_probe(17, 3, 1, 1), std::invalid_argument);
}

TEST(Convexity, SingleElementIsLinear) {
  // f(x) = x/2 at n = 1, so midpoint convexity holds with equality
  for (std::int64_t lo = 0; lo <= 8; ++lo)
    for (std::int64_t hi = lo; hi <= 8; hi += 2) {
      const auto f = [](std::int64_t x) { return *dss::exact_moment(dss::scalar_sequence({x}), 1).exact; };
      dss::VectorSequence a = dss::scalar_sequence({lo}), b = dss::scalar_sequence({hi});
      a.bound = b.bound = 8;
      EXPECT_EQ(f(lo) + f(hi), 2 * f((lo + hi) / 2));
    }
}
