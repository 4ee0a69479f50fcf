#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "reliabench/errors.hpp"
#include "reliabench/worlds.hpp"

namespace reliabench {
namespace {

using testing::q;

long binomial(int n, int k) {
  long c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

TEST(SampleSpaceTest, IndexingRoundTripsAndOrdersFirstDrawMostSignificant) {
  SampleSpace space("RN", 3);
  EXPECT_EQ(space.size(), 8u);
  EXPECT_EQ(space.sequence(0), "RRR");
  EXPECT_EQ(space.sequence(1), "RRN");
  EXPECT_EQ(space.sequence(7), "NNN");
  for (std::size_t i = 0; i < space.size(); ++i) EXPECT_EQ(space.index_of(space.sequence(i)), i);
  EXPECT_EQ(space.red_count(space.index_of("RNR")), 2);
}

TEST(SampleSpaceTest, RejectsBadAlphabetsAndSequences) {
  EXPECT_THROW(SampleSpace("", 2), Error);
  EXPECT_THROW(SampleSpace("RR", 2), Error);
  EXPECT_THROW(SampleSpace("RN", 0), Error);
  SampleSpace space("RN", 2);
  EXPECT_THROW(space.index_of("RRR"), Error);
  EXPECT_THROW(space.index_of("RX"), Error);
}

TEST(SampleSpaceTest, RefusesSpacesAboveTheLimit) {
  EXPECT_NO_THROW(SampleSpace("RN", 20));
  try {
    SampleSpace("RN", 21);
    FAIL() << "expected a budget refusal";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Budget);
  }
  EXPECT_NO_THROW(SampleSpace("RN", 21, std::size_t{1} << 21));
}

TEST(BuildIidBernoulliTest, ProductOfDrawProbabilities) {
  auto world = build_iid_bernoulli(q("7/10"), 4);
  EXPECT_EQ(world.probability("RRNR"), q("1029/10000"));
}

TEST(BuildIidBernoulliTest, DegenerateWorldAtThetaOne) {
  auto world = build_iid_bernoulli(q("1"), 3);
  for (std::size_t i = 0; i < world.space().size(); ++i) {
    EXPECT_EQ(world.probability(i), world.space().sequence(i) == "RRR" ? 1 : 0);
  }
}

TEST(BuildIidBernoulliTest, UniformAtOneHalf) {
  auto world = build_iid_bernoulli(q("1/2"), 4);
  for (const auto& p : world.probabilities()) EXPECT_EQ(p, q("1/16"));
}

TEST(BuildIidBernoulliTest, DomainErrors) {
  EXPECT_THROW(build_iid_bernoulli(q("11/10"), 4), Error);
  EXPECT_THROW(build_iid_bernoulli(q("-1/10"), 4), Error);
  EXPECT_THROW(build_iid_bernoulli(q("1/2"), 0), Error);
}

TEST(BuildIidBernoulliTest, MatchesIndependentProductOracle) {
  for (const char* t : {"0", "1/3", "3/10", "1/2", "9/10", "1"}) {
    auto world = build_iid_bernoulli(q(t), 5);
    for (std::size_t i = 0; i < world.space().size(); ++i) {
      EXPECT_EQ(world.probability(i), testing::bernoulli_sequence_probability(q(t), world.space().sequence(i)));
    }
  }
}

// Properties: exact normalisation, binomial count law, exchangeability.
TEST(BuildIidBernoulliTest, RandomWorldsSatisfyBinomialLawAndExchangeability) {
  std::mt19937 rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    const Rational theta = testing::random_unit(rng, 20);
    const int n = 1 + trial % 6;
    auto world = build_iid_bernoulli(theta, n);
    const auto& space = world.space();
    Rational total = std::accumulate(world.probabilities().begin(), world.probabilities().end(), Rational(0));
    EXPECT_EQ(total, 1);
    std::vector<Rational> by_count(static_cast<std::size_t>(n) + 1);
    for (std::size_t i = 0; i < space.size(); ++i) by_count[static_cast<std::size_t>(space.red_count(i))] += world.probability(i);
    for (int k = 0; k <= n; ++k) {
      EXPECT_EQ(by_count[static_cast<std::size_t>(k)],
                Rational(binomial(n, k)) * power(theta, static_cast<unsigned>(k)) *
                    power(Rational(1) - theta, static_cast<unsigned>(n - k)));
    }
    std::uniform_int_distribution<std::size_t> pick(0, space.size() - 1);
    std::string seq = space.sequence(pick(rng));
    std::string shuffled = seq;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(world.probability(seq), world.probability(shuffled));
  }
}

TEST(BuildIidTest, GeneralAlphabet) {
  SampleSpace space("abc", 2);
  std::vector<Rational> per_draw{q("1/2"), q("1/3"), q("1/6")};
  auto world = build_iid(q("1/2"), space, per_draw);
  EXPECT_EQ(world.probability("ab"), q("1/6"));
  EXPECT_EQ(world.probability("cc"), q("1/36"));
}

TEST(GridTest, SimpleGridSizes) {
  EXPECT_EQ(make_simple_grid(100, 2).size(), 101u);
  auto two = make_simple_grid(1, 2);
  EXPECT_EQ(two.thetas(), (std::vector<Rational>{0, 1}));
  auto five = make_simple_grid(4, 2);
  EXPECT_EQ(five.thetas(), (std::vector<Rational>{0, q("1/4"), q("1/2"), q("3/4"), 1}));
  EXPECT_THROW(make_simple_grid(0, 2), Error);
}

TEST(GridTest, CompoundGridDeduplicates) {
  EXPECT_EQ(make_compound_grid(2, 2, 1).thetas(), (std::vector<Rational>{0, q("1/2"), 1}));
  EXPECT_EQ(make_compound_grid(2, 3, 1).thetas(),
            (std::vector<Rational>{0, q("1/3"), q("1/2"), q("2/3"), 1}));
  EXPECT_THROW(make_compound_grid(3, 2, 1), Error);
  EXPECT_THROW(make_compound_grid(0, 2, 1), Error);
}

TEST(GridTest, CompoundGridCardinalityMatchesReducedPairOracle) {
  // Oracle: distinct reduced (a, b) pairs by integer gcd.
  std::set<std::pair<int, int>> reduced;
  for (int b = 10; b <= 100; ++b) {
    for (int a = 0; a <= b; ++a) {
      int g = std::gcd(a, b);
      reduced.emplace(a / g, b / g);
    }
  }
  ASSERT_EQ(reduced.size(), 3045u);
  auto grid = make_compound_grid(10, 100, 1);
  EXPECT_EQ(grid.size(), reduced.size());
  auto thetas = grid.thetas();
  EXPECT_TRUE(std::is_sorted(thetas.begin(), thetas.end()));
  EXPECT_EQ(std::set<Rational>(thetas.begin(), thetas.end()).size(), thetas.size());
}

TEST(ExplicitWorldTest, ValidatesDistribution) {
  SampleSpace space("RN", 2);
  EXPECT_NO_THROW(make_explicit_world(q("1/2"), space, {{"RR", q("1/4")}, {"RN", q("1/4")}, {"NR", q("1/4")}, {"NN", q("1/4")}}));
  try {
    make_explicit_world(q("1/2"), space, {{"RR", q("1/2")}, {"NN", q("2/5")}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
    EXPECT_NE(std::string(e.what()).find("sum to 9/10"), std::string::npos);
  }
  try {
    make_explicit_world(q("1/2"), space, {{"RR", q("3/2")}, {"NN", q("-1/2")}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("negative probability -1/2 at NN"), std::string::npos);
  }
}

TEST(ParameterSpaceTest, RejectsDuplicatesAndMixedSpaces) {
  std::vector<World> dup{build_iid_bernoulli(q("1/2"), 2), build_iid_bernoulli(q("1/2"), 2)};
  EXPECT_THROW(ParameterSpace{dup}, Error);
  std::vector<World> mixed{build_iid_bernoulli(q("1/2"), 2), build_iid_bernoulli(q("1/3"), 3)};
  EXPECT_THROW(ParameterSpace{mixed}, Error);
  EXPECT_THROW(ParameterSpace{std::vector<World>{}}, Error);
}

TEST(HypothesisTest, FormsPartitionTheSpace) {
  auto space = testing::urn_space();
  auto one_sided = Hypothesis::at_least(space, q("1/2"));
  EXPECT_EQ(one_sided.null_thetas(), (std::vector<Rational>{q("1/2"), q("7/10")}));
  EXPECT_EQ(one_sided.alt_thetas(), (std::vector<Rational>{q("3/10")}));
  auto lower = Hypothesis::at_most(space, q("1/2"));
  EXPECT_EQ(lower.alt_thetas(), (std::vector<Rational>{q("7/10")}));
  auto interval = Hypothesis::interval(space, q("9/20"), q("11/20"));
  EXPECT_EQ(interval.null_thetas(), (std::vector<Rational>{q("1/2")}));
  auto part = Hypothesis::point(space, q("1/2")).partition(space);
  EXPECT_EQ(part.null_indices, (std::vector<std::size_t>{1}));
  EXPECT_EQ(part.alt_indices, (std::vector<std::size_t>{0, 2}));
}

TEST(HypothesisTest, EmptyNullAndForeignThetasAreContextErrors) {
  auto space = testing::urn_space();
  EXPECT_THROW(Hypothesis::point(space, q("1/4")), Error);
  EXPECT_THROW(Hypothesis(space, {q("1/4")}), Error);
  auto other = make_bernoulli_space(std::vector<Rational>{q("1/2"), q("1/4")}, 4);
  auto hyp = Hypothesis::point(space, q("1/2"));
  EXPECT_THROW(hyp.partition(other), Error);
}

}  // namespace
}  // namespace reliabench
