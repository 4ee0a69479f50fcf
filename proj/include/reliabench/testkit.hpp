#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reliabench/rational.hpp"
#include "reliabench/worlds.hpp"

namespace reliabench {

/// A randomized test: phi(x) is the probability of rejecting H0 after
/// observing sequence x. Deterministic tests are the {0,1}-valued case and
/// their rejection region is {x : phi(x) = 1}.
class Test {
 public:
  Test(SampleSpace space, std::vector<Rational> phi);

  static Test never_reject(const SampleSpace& space);
  static Test always_reject(const SampleSpace& space);
  /// phi as a function of the Red count.
  static Test from_counts(const SampleSpace& space, const std::function<Rational(int)>& phi_of_count);
  /// Deterministic test rejecting exactly when the Red count is in `counts`.
  static Test rejecting_counts(const SampleSpace& space, std::initializer_list<int> counts);
  static Test from_sequences(const SampleSpace& space, const std::map<std::string, Rational>& phi,
                             const Rational& otherwise = 0);

  const SampleSpace& space() const noexcept { return space_; }
  const Rational& phi(std::size_t index) const { return phi_.at(index); }
  const Rational& phi(std::string_view sequence) const { return phi_[space_.index_of(sequence)]; }
  std::span<const Rational> values() const noexcept { return phi_; }
  bool is_deterministic() const;

  /// 1 - phi.
  Test complement() const;

  bool operator==(const Test& other) const { return space_ == other.space_ && phi_ == other.phi_; }

 private:
  SampleSpace space_;
  std::vector<Rational> phi_;
};

/// lambda * a + (1 - lambda) * b.
Test mix(const Rational& lambda, const Test& a, const Test& b);

/// Rejection probability as a function of theta, in parameter-space order.
class PowerFunction {
 public:
  PowerFunction(std::vector<Rational> thetas, std::vector<Rational> values);

  const std::vector<Rational>& thetas() const noexcept { return thetas_; }
  const std::vector<Rational>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const Rational& at(const Rational& theta) const;

  bool operator==(const PowerFunction& other) const = default;

 private:
  std::vector<Rational> thetas_;
  std::vector<Rational> values_;
};

Rational rejection_probability(const Test& test, const World& world);
PowerFunction power_function(const Test& test, const ParameterSpace& space);

/// Maximum rejection probability over the null worlds.
Rational size(const Test& test, const Hypothesis& hyp, const ParameterSpace& space);
bool has_level(const Test& test, const Rational& alpha, const Hypothesis& hyp, const ParameterSpace& space);

struct UnbiasednessReport {
  bool unbiased = true;
  /// No alternative worlds: the condition holds vacuously.
  bool vacuous = false;
  /// First violating pair when not unbiased.
  std::optional<Rational> alt_theta;
  std::optional<Rational> null_theta;
};

/// Power at every alternative is at least the power at every null world.
UnbiasednessReport check_unbiased(const Test& test, const Hypothesis& hyp, const ParameterSpace& space);
bool is_unbiased(const Test& test, const Hypothesis& hyp, const ParameterSpace& space);

/// Either a finite list of tests or one of the two classes the optimal
/// constructions can describe exactly via power envelopes.
class TestClass {
 public:
  enum class Kind { Extensional, LevelAlpha, UnbiasedLevelAlpha };

  static TestClass of(std::vector<Test> members);
  static TestClass level(const Rational& alpha);
  static TestClass unbiased_level(const Rational& alpha);

  Kind kind() const noexcept { return kind_; }
  const std::vector<Test>& members() const noexcept { return members_; }
  const Rational& alpha() const noexcept { return alpha_; }

 private:
  Kind kind_ = Kind::Extensional;
  std::vector<Test> members_;
  Rational alpha_;
};

struct UmpReport {
  bool ump = false;
  bool member = false;
  /// No alternative worlds: dominance holds vacuously.
  bool vacuous = false;
  /// Alternative where some class member is strictly more powerful.
  std::optional<Rational> beaten_at;
  std::optional<Rational> best_power;
};

UmpReport check_ump_in_class(const Test& test, const TestClass& cls, const Hypothesis& hyp,
                             const ParameterSpace& space);
bool is_ump_in_class(const Test& test, const TestClass& cls, const Hypothesis& hyp, const ParameterSpace& space);

struct PowerComparison {
  enum class Ordering { Equal, Greater, Less, Incomparable };
  Ordering ordering = Ordering::Equal;
  std::vector<Rational> greater_at;  // first test strictly more powerful
  std::vector<Rational> less_at;
  std::vector<Rational> equal_at;
};

PowerComparison compare_power(const Test& first, const Test& second, const ParameterSpace& space,
                              std::span<const Rational> on);

}  // namespace reliabench
