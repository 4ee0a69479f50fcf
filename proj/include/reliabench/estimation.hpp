#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "reliabench/rational.hpp"
#include "reliabench/worlds.hpp"

namespace reliabench {

/// Point estimator: one rational estimate per sequence.
class Estimator {
 public:
  Estimator(SampleSpace space, std::vector<Rational> values);

  static Estimator constant(const SampleSpace& space, const Rational& value);
  /// Compact form: the estimate depends on the Red count only.
  static Estimator from_counts(const SampleSpace& space, const std::function<Rational(int)>& value_of_count);
  /// k / n.
  static Estimator sample_proportion(const SampleSpace& space);

  const SampleSpace& space() const noexcept { return space_; }
  const Rational& value(std::size_t index) const { return values_.at(index); }
  std::span<const Rational> values() const noexcept { return values_; }

  bool operator==(const Estimator& other) const { return space_ == other.space_ && values_ == other.values_; }

 private:
  SampleSpace space_;
  std::vector<Rational> values_;
};

/// The quantity being estimated, as a function of theta.
class Estimand {
 public:
  explicit Estimand(std::function<Rational(const Rational&)> target) : target_(std::move(target)) {}
  static Estimand identity();
  /// Explicit table; throws ErrorKind::Context for a theta outside it.
  static Estimand table(std::map<Rational, Rational> values);

  Rational operator()(const Rational& theta) const {
    Rational value = target_(theta);
    value.canonicalize();
    return value;
  }

 private:
  std::function<Rational(const Rational&)> target_;
};

struct Interval {
  Rational lo;
  Rational hi;
};

class IntervalEstimator {
 public:
  /// Requires lo <= hi for every sequence.
  IntervalEstimator(SampleSpace space, std::vector<Interval> intervals);
  /// [center(k) - half_width, center(k) + half_width] style constructions.
  static IntervalEstimator from_counts(const SampleSpace& space, const std::function<Interval(int)>& interval_of_count);

  const SampleSpace& space() const noexcept { return space_; }
  const Interval& interval(std::size_t index) const { return intervals_.at(index); }
  std::span<const Interval> intervals() const noexcept { return intervals_; }

 private:
  SampleSpace space_;
  std::vector<Interval> intervals_;
};

/// loss(estimate, truth).
using Loss = std::function<Rational(const Rational&, const Rational&)>;
Rational squared_error(const Rational& estimate, const Rational& truth);

Rational expectation(const Estimator& e, const World& world);
Rational variance(const Estimator& e, const World& world);
/// Expected loss; mse() is risk() under squared error.
Rational risk(const Estimator& e, const World& world, const Estimand& g, const Loss& loss);
Rational mse(const Estimator& e, const World& world, const Estimand& g);
Rational bias(const Estimator& e, const World& world, const Estimand& g);
bool is_unbiased_estimator(const Estimator& e, const ParameterSpace& space, const Estimand& g);

struct Dominance {
  bool dominates = false;
  /// A world with strictly smaller risk for the first estimator.
  std::optional<Rational> strict_at;
};

/// Risk of `first` <= risk of `second` at every world and < at one.
Dominance dominates(const Estimator& first, const Estimator& second, const ParameterSpace& space, const Estimand& g,
                    const Loss& loss = squared_error);

struct Admissibility {
  bool admissible = true;
  std::optional<std::size_t> dominated_by;  // index into the class
  std::optional<Rational> strict_at;
};

/// Admissible within the declared finite class: no member dominates `e`.
Admissibility is_admissible_in_class(const Estimator& e, std::span<const Estimator> cls, const ParameterSpace& space,
                                     const Estimand& g, const Loss& loss = squared_error);

struct UmvuVerdict {
  bool umvu = false;
  /// The class has no unbiased member.
  bool vacuous = false;
  std::string reason;
  std::optional<std::size_t> beaten_by;
  std::optional<Rational> beaten_at;
};

UmvuVerdict is_umvu_in_class(const Estimator& e, std::span<const Estimator> cls, const ParameterSpace& space,
                             const Estimand& g);

Rational coverage_probability(const IntervalEstimator& ie, const World& world, const Estimand& g);
Rational expected_width(const IntervalEstimator& ie, const World& world);

}  // namespace reliabench
