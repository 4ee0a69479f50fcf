#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "reliabench/construct.hpp"
#include "reliabench/errors.hpp"
#include "reliabench/oracle.hpp"

namespace reliabench {
namespace {

using testing::q;

TEST(EnumerationTest, CountsMatchTwoToTheTwoToTheN) {
  EXPECT_EQ(enumerate_deterministic_tests(1, "RN").count(), 4u);
  EXPECT_EQ(enumerate_deterministic_tests(2, "RN").count(), 16u);
  EXPECT_EQ(enumerate_deterministic_tests(3, "RN").count(), 256u);
  EXPECT_EQ(enumerate_deterministic_tests(4, "RN").count(), 65536u);
  EXPECT_EQ(enumerate_deterministic_tests(2, "abc").count(), 512u);
}

TEST(EnumerationTest, EveryTestIsDistinctAndDeterministic) {
  std::set<std::vector<Rational>> seen;
  std::size_t streamed = 0;
  for (const auto& test : enumerate_deterministic_tests(3, "RN")) {
    EXPECT_TRUE(test.is_deterministic());
    seen.emplace(test.values().begin(), test.values().end());
    ++streamed;
  }
  EXPECT_EQ(streamed, 256u);
  EXPECT_EQ(seen.size(), 256u);
}

TEST(EnumerationTest, MaskBitsSelectSequences) {
  SampleSpace space("RN", 2);
  auto test = deterministic_test(space, 0b1001);
  EXPECT_EQ(test.phi("RR"), 1);
  EXPECT_EQ(test.phi("RN"), 0);
  EXPECT_EQ(test.phi("NR"), 0);
  EXPECT_EQ(test.phi("NN"), 1);
}

TEST(EnumerationTest, RefusesAboveBudgetAndStatesTheNeed) {
  try {
    enumerate_deterministic_tests(5, "RN");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Budget);
    EXPECT_NE(std::string(e.what()).find("2^32"), std::string::npos);
  }
  EXPECT_THROW(enumerate_deterministic_tests(4, "RN", EnumerationBudget{1000}), Error);
}

TEST(BestDeterministicTest, PointNullAgainstThreeTenths) {
  auto ctx = testing::two_sided_urn();
  auto best = best_deterministic_power(ctx.space, ctx.hyp, q("1/16"), q("3/10"));
  EXPECT_EQ(best.power, q("2401/10000"));
  EXPECT_EQ(best.test, reliabench::Test::rejecting_counts(ctx.space.sample_space(), {0}));
  EXPECT_EQ(best.mask, std::uint64_t{1} << ctx.space.sample_space().index_of("NNNN"));
}

TEST(BestDeterministicTest, TrivialLevels) {
  auto ctx = testing::two_sided_urn();
  auto all = best_deterministic_power(ctx.space, ctx.hyp, 1, q("3/10"));
  EXPECT_EQ(all.power, 1);
  EXPECT_EQ(all.test, reliabench::Test::always_reject(ctx.space.sample_space()));
  auto none = best_deterministic_power(ctx.space, ctx.hyp, 0, q("3/10"));
  EXPECT_EQ(none.power, 0);
  EXPECT_EQ(none.mask, 0u);
}

TEST(BestDeterministicTest, AgreesWithNaiveScanOnSmallSpaces) {
  std::mt19937 rng(31);
  auto space = make_simple_grid(5, 3);
  for (int trial = 0; trial < 15; ++trial) {
    const Rational null_theta = space.thetas()[rng() % 6];
    Rational alt = space.thetas()[rng() % 6];
    if (alt == null_theta) continue;
    auto hyp = Hypothesis::point(space, null_theta);
    const Rational alpha = testing::random_unit(rng, 10) / 2;
    Rational best = -1;
    std::uint64_t best_mask = 0;
    auto tests = enumerate_deterministic_tests(3, "RN");
    for (auto it = tests.begin(); it != tests.end(); ++it) {
      auto t = *it;
      if (!has_level(t, alpha, hyp, space)) continue;
      Rational p = rejection_probability(t, space.at(alt));
      if (p > best) {
        best = p;
        best_mask = it.mask();
      }
    }
    auto fast = best_deterministic_power(space, hyp, alpha, alt);
    EXPECT_EQ(fast.power, best);
    EXPECT_EQ(fast.mask, best_mask);
  }
}

TEST(CertifyTest, OneSidedUrnHasZeroMargin) {
  auto ctx = testing::one_sided_urn();
  auto env = power_envelope(ctx.space, ctx.hyp, ctx.alpha, ConstraintSet::LevelOnly);
  auto cert = certify_envelope(env, ctx.space, ctx.hyp, ctx.alpha);
  EXPECT_TRUE(cert.certified);
  EXPECT_FALSE(cert.vacuous);
  ASSERT_EQ(cert.margins.size(), 1u);
  EXPECT_EQ(cert.margins[0], 0);
}

TEST(CertifyTest, RandomizationHelpsAtOneTwentieth) {
  auto ctx = testing::one_sided_urn(q("1/20"));
  auto env = power_envelope(ctx.space, ctx.hyp, ctx.alpha, ConstraintSet::LevelOnly);
  EXPECT_EQ(env.at(q("3/10")), q("2401/12500"));
  auto cert = certify_envelope(env, ctx.space, ctx.hyp, ctx.alpha);
  EXPECT_TRUE(cert.certified);
  EXPECT_EQ(cert.margins[0], q("2401/12500"));
}

TEST(CertifyTest, EmptyAlternativesAreVacuous) {
  auto space = testing::urn_space();
  auto hyp = Hypothesis(space, space.thetas());
  auto env = power_envelope(space, hyp, q("1/16"), ConstraintSet::LevelOnly);
  auto cert = certify_envelope(env, space, hyp, q("1/16"));
  EXPECT_TRUE(cert.certified);
  EXPECT_TRUE(cert.vacuous);
}

TEST(CertifyTest, UnderstatedEnvelopeIsCaught) {
  auto ctx = testing::one_sided_urn();
  auto env = power_envelope(ctx.space, ctx.hyp, ctx.alpha, ConstraintSet::LevelOnly);
  env.values[0] = q("1/10");
  auto cert = certify_envelope(env, ctx.space, ctx.hyp, ctx.alpha);
  EXPECT_FALSE(cert.certified);
  EXPECT_EQ(cert.violation_theta, q("3/10"));
  ASSERT_TRUE(cert.violation_mask.has_value());
  EXPECT_EQ(*cert.violation_mask, std::uint64_t{1} << ctx.space.sample_space().index_of("NNNN"));
}

TEST(OraclePropertyTest, EnvelopeDominatesDeterministicBestAndUmpWitnessBeatsAll) {
  std::mt19937 rng(41);
  auto space = make_simple_grid(4, 3);
  auto tests = enumerate_deterministic_tests(3, "RN");
  for (int trial = 0; trial < 8; ++trial) {
    auto hyp = Hypothesis::at_least(space, space.thetas()[1 + rng() % 3]);
    const Rational alpha = testing::random_unit(rng, 8) / 2;
    auto env = power_envelope(space, hyp, alpha, ConstraintSet::LevelOnly);
    auto cert = certify_envelope(env, space, hyp, alpha);
    EXPECT_TRUE(cert.certified);
    for (const auto& m : cert.margins) EXPECT_GE(m, 0);

    auto decision = decide_ump(space, hyp, alpha);
    ASSERT_TRUE(decision.exists);
    auto witness_power = power_function(*decision.witness, space);
    for (const auto& t : tests) {
      if (!has_level(t, alpha, hyp, space)) continue;
      auto p = power_function(t, space);
      for (const auto& theta : hyp.alt_thetas()) EXPECT_GE(witness_power.at(theta), p.at(theta));
    }
  }
}

}  // namespace
}  // namespace reliabench
