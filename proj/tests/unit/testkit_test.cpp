#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "reliabench/errors.hpp"
#include "reliabench/testkit.hpp"

namespace reliabench {
namespace {

using testing::q;

class TestkitTest : public ::testing::Test {
 protected:
  ParameterSpace space = testing::urn_space();
  SampleSpace sample = space.sample_space();
  reliabench::Test k0 = reliabench::Test::rejecting_counts(sample, {0});
  reliabench::Test k4 = reliabench::Test::rejecting_counts(sample, {4});
  reliabench::Test never = reliabench::Test::never_reject(sample);
  reliabench::Test always = reliabench::Test::always_reject(sample);
};

TEST_F(TestkitTest, RejectionProbabilityOfTheKZeroTest) {
  EXPECT_EQ(rejection_probability(k0, space.at(q("1/2"))), q("1/16"));
  EXPECT_EQ(rejection_probability(k0, space.at(q("3/10"))), q("2401/10000"));
  EXPECT_EQ(rejection_probability(always, space.at(q("7/10"))), 1);
}

TEST_F(TestkitTest, PowerFunctions) {
  EXPECT_EQ(power_function(k0, space).values(),
            (std::vector<Rational>{q("2401/10000"), q("1/16"), q("81/10000")}));
  EXPECT_EQ(power_function(never, space).values(), (std::vector<Rational>{0, 0, 0}));
  EXPECT_EQ(power_function(always, space).values(), (std::vector<Rational>{1, 1, 1}));
}

TEST_F(TestkitTest, SizeAndLevel) {
  auto hyp = Hypothesis::at_least(space, q("1/2"));
  EXPECT_EQ(size(k0, hyp, space), q("1/16"));
  EXPECT_EQ(size(never, hyp, space), 0);
  EXPECT_EQ(size(always, hyp, space), 1);
  EXPECT_TRUE(has_level(k0, q("1/16"), hyp, space));
  EXPECT_FALSE(has_level(k0, q("1/20"), hyp, space));
  EXPECT_TRUE(has_level(never, 0, hyp, space));
  EXPECT_THROW(has_level(k0, q("3/2"), hyp, space), Error);
}

TEST_F(TestkitTest, Unbiasedness) {
  EXPECT_TRUE(is_unbiased(k0, Hypothesis::at_least(space, q("1/2")), space));
  auto two_sided = Hypothesis::point(space, q("1/2"));
  auto report = check_unbiased(k0, two_sided, space);
  EXPECT_FALSE(report.unbiased);
  EXPECT_EQ(*report.alt_theta, q("7/10"));
  EXPECT_EQ(*report.null_theta, q("1/2"));
  EXPECT_TRUE(is_unbiased(never, two_sided, space));
}

TEST_F(TestkitTest, UnbiasednessIsVacuousWithoutAlternatives) {
  auto all_null = Hypothesis(space, space.thetas());
  auto report = check_unbiased(k0, all_null, space);
  EXPECT_TRUE(report.unbiased);
  EXPECT_TRUE(report.vacuous);
}

TEST_F(TestkitTest, UmpInExtensionalClass) {
  auto hyp = Hypothesis::at_least(space, q("1/2"));
  auto cls = TestClass::of({k0, never});
  EXPECT_TRUE(is_ump_in_class(k0, cls, hyp, space));
  auto report = check_ump_in_class(never, cls, hyp, space);
  EXPECT_FALSE(report.ump);
  EXPECT_EQ(*report.beaten_at, q("3/10"));
  EXPECT_TRUE(is_ump_in_class(k4, TestClass::of({k4}), hyp, space));
  EXPECT_FALSE(is_ump_in_class(k4, cls, hyp, space)) << "not a member";
}

TEST_F(TestkitTest, UmpInIntensionalClasses) {
  auto hyp = Hypothesis::at_least(space, q("1/2"));
  EXPECT_TRUE(is_ump_in_class(k0, TestClass::level(q("1/16")), hyp, space));
  EXPECT_FALSE(is_ump_in_class(never, TestClass::level(q("1/16")), hyp, space));
  EXPECT_FALSE(is_ump_in_class(k0, TestClass::level(q("1/20")), hyp, space)) << "size exceeds the level";
  EXPECT_TRUE(is_ump_in_class(k0, TestClass::unbiased_level(q("1/16")), hyp, space));
}

TEST_F(TestkitTest, ComparePower) {
  std::vector<Rational> all = space.thetas();
  EXPECT_EQ(compare_power(always, never, space, all).ordering, PowerComparison::Ordering::Greater);
  std::vector<Rational> low{q("3/10")};
  auto cmp = compare_power(k0, k4, space, low);
  EXPECT_EQ(cmp.ordering, PowerComparison::Ordering::Greater);
  EXPECT_EQ(cmp.greater_at, low);
  EXPECT_EQ(compare_power(k0, k4, space, all).ordering, PowerComparison::Ordering::Incomparable);
  EXPECT_EQ(compare_power(k0, k0, space, all).ordering, PowerComparison::Ordering::Equal);
  EXPECT_THROW(compare_power(k0, k4, space, std::span<const Rational>{}), Error);
}

TEST_F(TestkitTest, TestsValidateTheirValues) {
  EXPECT_THROW(reliabench::Test(sample, std::vector<Rational>(sample.size(), q("3/2"))), Error);
  EXPECT_THROW(reliabench::Test(sample, std::vector<Rational>(3)), Error);
  auto other = make_bernoulli_space(std::vector<Rational>{q("1/2")}, 3);
  EXPECT_THROW(rejection_probability(k0, other.world(0)), Error);
}

// Marked-sequence sum, written independently: mark every
// sequence the deterministic test rejects and add up its probability.
Rational marked_sum(const Test& test, const Rational& theta) {
  Rational total;
  for (std::size_t i = 0; i < test.space().size(); ++i) {
    if (test.phi(i) == 1) total += testing::bernoulli_sequence_probability(theta, test.space().sequence(i));
  }
  return total;
}

Test random_test(std::mt19937& rng, const SampleSpace& sample) {
  std::vector<Rational> phi(sample.size());
  for (auto& v : phi) v = testing::random_unit(rng);
  return Test(sample, std::move(phi));
}

TEST(TestkitPropertyTest, DeterministicRejectionMatchesMarkedSum) {
  std::mt19937 rng(7);
  for (int n = 1; n <= 4; ++n) {
    auto space = make_simple_grid(10, n);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<Rational> phi(space.sample_space().size());
      for (auto& v : phi) v = rng() % 2;
      reliabench::Test test(space.sample_space(), phi);
      for (const auto& w : space.worlds()) EXPECT_EQ(rejection_probability(test, w), marked_sum(test, w.theta()));
    }
  }
}

TEST(TestkitPropertyTest, AlgebraicInvariants) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    auto space = make_simple_grid(5, n);
    const auto& sample = space.sample_space();
    auto t1 = random_test(rng, sample);
    auto t2 = random_test(rng, sample);
    // Pointwise max dominates t1.
    std::vector<Rational> upper(sample.size());
    for (std::size_t i = 0; i < upper.size(); ++i) upper[i] = std::max(t1.phi(i), t2.phi(i));
    reliabench::Test dominating(sample, upper);
    auto p1 = power_function(t1, space);
    auto p2 = power_function(t2, space);
    auto pu = power_function(dominating, space);
    auto pc = power_function(t1.complement(), space);
    const Rational lambda = testing::random_unit(rng);
    auto pm = power_function(mix(lambda, t1, t2), space);
    for (std::size_t w = 0; w < space.size(); ++w) {
      EXPECT_LE(p1.values()[w], pu.values()[w]);
      EXPECT_EQ(pc.values()[w], 1 - p1.values()[w]);
      EXPECT_EQ(pm.values()[w], lambda * p1.values()[w] + (1 - lambda) * p2.values()[w]);
    }
    auto hyp = Hypothesis::at_least(space, q("1/2"));
    auto s = size(t1, hyp, space);
    EXPECT_TRUE(has_level(t1, s, hyp, space));
    if (s > 0) EXPECT_FALSE(has_level(t1, s - Rational(1, 1000), hyp, space));
    // UMP-in-class: reflexive on singletons; two mutual winners share power on alternatives.
    EXPECT_TRUE(is_ump_in_class(t1, TestClass::of({t1}), hyp, space));
    auto pair = TestClass::of({t1, t2});
    if (is_ump_in_class(t1, pair, hyp, space) && is_ump_in_class(t2, pair, hyp, space)) {
      for (const auto& theta : hyp.alt_thetas()) EXPECT_EQ(p1.at(theta), p2.at(theta));
    }
  }
}

}  // namespace
}  // namespace reliabench
