#include "reliabench/estimation.hpp"

#include <algorithm>

#include "reliabench/errors.hpp"

namespace reliabench {

Estimator::Estimator(SampleSpace space, std::vector<Rational> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw Error(ErrorKind::Shape, "estimator assigns " + std::to_string(values_.size()) + " values to a sample space of " +
                                      std::to_string(space_.size()));
  }
  for (auto& v : values_) v.canonicalize();
}

Estimator Estimator::constant(const SampleSpace& space, const Rational& value) {
  return Estimator(space, std::vector<Rational>(space.size(), value));
}

Estimator Estimator::from_counts(const SampleSpace& space, const std::function<Rational(int)>& value_of_count) {
  std::vector<Rational> values(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) values[i] = value_of_count(space.red_count(i));
  return Estimator(space, std::move(values));
}

Estimator Estimator::sample_proportion(const SampleSpace& space) {
  return from_counts(space, [n = space.length()](int k) { return Rational(k, n); });
}

Estimand Estimand::identity() {
  return Estimand([](const Rational& theta) { return theta; });
}

Estimand Estimand::table(std::map<Rational, Rational> raw) {
  std::map<Rational, Rational> values;
  for (const auto& [key, value] : raw) {
    Rational theta = key;
    theta.canonicalize();
    values[theta] = value;
  }
  return Estimand([values = std::move(values)](const Rational& theta) {
    auto it = values.find(theta);
    if (it == values.end()) throw Error(ErrorKind::Context, "estimand is undefined at theta " + to_string(theta));
    return it->second;
  });
}

IntervalEstimator::IntervalEstimator(SampleSpace space, std::vector<Interval> intervals)
    : space_(std::move(space)), intervals_(std::move(intervals)) {
  if (intervals_.size() != space_.size()) {
    throw Error(ErrorKind::Shape, "interval estimator must cover every sequence");
  }
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    intervals_[i].lo.canonicalize();
    intervals_[i].hi.canonicalize();
    if (intervals_[i].lo > intervals_[i].hi) {
      throw Error(ErrorKind::Validation, "interval at " + space_.sequence(i) + " has lo " + to_string(intervals_[i].lo) +
                                             " > hi " + to_string(intervals_[i].hi));
    }
  }
}

IntervalEstimator IntervalEstimator::from_counts(const SampleSpace& space,
                                                 const std::function<Interval(int)>& interval_of_count) {
  std::vector<Interval> intervals(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) intervals[i] = interval_of_count(space.red_count(i));
  return IntervalEstimator(space, std::move(intervals));
}

namespace {

void require_same_space(const SampleSpace& a, const SampleSpace& b) {
  if (!(a == b)) throw Error(ErrorKind::Shape, "estimator and world use different sample spaces");
}

}  // namespace

Rational squared_error(const Rational& estimate, const Rational& truth) {
  Rational d = estimate - truth;
  return d * d;
}

Rational expectation(const Estimator& e, const World& world) {
  require_same_space(e.space(), world.space());
  Rational total;
  for (std::size_t i = 0; i < e.space().size(); ++i) total += world.probability(i) * e.value(i);
  return total;
}

Rational variance(const Estimator& e, const World& world) {
  const Rational mean = expectation(e, world);
  Rational total;
  for (std::size_t i = 0; i < e.space().size(); ++i) {
    Rational d = e.value(i) - mean;
    total += world.probability(i) * d * d;
  }
  return total;
}

Rational risk(const Estimator& e, const World& world, const Estimand& g, const Loss& loss) {
  require_same_space(e.space(), world.space());
  const Rational truth = g(world.theta());
  Rational total;
  for (std::size_t i = 0; i < e.space().size(); ++i) {
    if (sgn(world.probability(i)) != 0) total += world.probability(i) * loss(e.value(i), truth);
  }
  return total;
}

Rational mse(const Estimator& e, const World& world, const Estimand& g) { return risk(e, world, g, squared_error); }

Rational bias(const Estimator& e, const World& world, const Estimand& g) {
  return expectation(e, world) - g(world.theta());
}

bool is_unbiased_estimator(const Estimator& e, const ParameterSpace& space, const Estimand& g) {
  return std::all_of(space.worlds().begin(), space.worlds().end(),
                     [&](const World& w) { return sgn(bias(e, w, g)) == 0; });
}

Dominance dominates(const Estimator& first, const Estimator& second, const ParameterSpace& space, const Estimand& g,
                    const Loss& loss) {
  Dominance out;
  for (const auto& w : space.worlds()) {
    auto a = risk(first, w, g, loss);
    auto b = risk(second, w, g, loss);
    if (a > b) return Dominance{};
    if (a < b && !out.strict_at) out.strict_at = w.theta();
  }
  out.dominates = out.strict_at.has_value();
  return out;
}

Admissibility is_admissible_in_class(const Estimator& e, std::span<const Estimator> cls, const ParameterSpace& space,
                                     const Estimand& g, const Loss& loss) {
  if (std::find(cls.begin(), cls.end(), e) == cls.end()) {
    throw Error(ErrorKind::Domain, "estimator is not a member of the candidate class");
  }
  for (std::size_t i = 0; i < cls.size(); ++i) {
    auto d = dominates(cls[i], e, space, g, loss);
    if (d.dominates) return Admissibility{false, i, d.strict_at};
  }
  return Admissibility{};
}

UmvuVerdict is_umvu_in_class(const Estimator& e, std::span<const Estimator> cls, const ParameterSpace& space,
                             const Estimand& g) {
  if (std::find(cls.begin(), cls.end(), e) == cls.end()) {
    throw Error(ErrorKind::Domain, "estimator is not a member of the candidate class");
  }
  UmvuVerdict out;
  std::vector<std::size_t> unbiased;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    if (is_unbiased_estimator(cls[i], space, g)) unbiased.push_back(i);
  }
  if (unbiased.empty()) {
    out.vacuous = true;
    out.reason = "class has no unbiased member";
    return out;
  }
  if (!is_unbiased_estimator(e, space, g)) {
    out.reason = "estimator is biased";
    return out;
  }
  for (const auto& w : space.worlds()) {
    const auto own = variance(e, w);
    for (auto i : unbiased) {
      if (variance(cls[i], w) < own) {
        out.reason = "another unbiased member has smaller variance";
        out.beaten_by = i;
        out.beaten_at = w.theta();
        return out;
      }
    }
  }
  out.umvu = true;
  return out;
}

Rational coverage_probability(const IntervalEstimator& ie, const World& world, const Estimand& g) {
  if (!(ie.space() == world.space())) throw Error(ErrorKind::Shape, "interval estimator and world differ in sample space");
  const Rational truth = g(world.theta());
  Rational total;
  for (std::size_t i = 0; i < ie.space().size(); ++i) {
    const auto& iv = ie.interval(i);
    if (iv.lo <= truth && truth <= iv.hi) total += world.probability(i);
  }
  return total;
}

Rational expected_width(const IntervalEstimator& ie, const World& world) {
  if (!(ie.space() == world.space())) throw Error(ErrorKind::Shape, "interval estimator and world differ in sample space");
  Rational total;
  for (std::size_t i = 0; i < ie.space().size(); ++i) {
    total += world.probability(i) * (ie.interval(i).hi - ie.interval(i).lo);
  }
  return total;
}

}  // namespace reliabench
