#include "reliabench/testkit.hpp"

#include <algorithm>

#include "reliabench/construct.hpp"
#include "reliabench/errors.hpp"

namespace reliabench {

Test::Test(SampleSpace space, std::vector<Rational> phi) : space_(std::move(space)), phi_(std::move(phi)) {
  if (phi_.size() != space_.size()) {
    throw Error(ErrorKind::Shape, "test assigns " + std::to_string(phi_.size()) + " values to a sample space of " +
                                      std::to_string(space_.size()));
  }
  for (std::size_t i = 0; i < phi_.size(); ++i) {
    phi_[i].canonicalize();
    if (!in_unit_interval(phi_[i])) {
      throw Error(ErrorKind::Validation, "rejection probability " + to_string(phi_[i]) + " at " +
                                             space_.sequence(i) + " is outside [0,1]");
    }
  }
}

Test Test::never_reject(const SampleSpace& space) { return Test(space, std::vector<Rational>(space.size())); }

Test Test::always_reject(const SampleSpace& space) { return Test(space, std::vector<Rational>(space.size(), 1)); }

Test Test::from_counts(const SampleSpace& space, const std::function<Rational(int)>& phi_of_count) {
  std::vector<Rational> phi(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) phi[i] = phi_of_count(space.red_count(i));
  return Test(space, std::move(phi));
}

Test Test::rejecting_counts(const SampleSpace& space, std::initializer_list<int> counts) {
  std::vector<int> region(counts);
  return from_counts(space, [&](int k) {
    return Rational(std::find(region.begin(), region.end(), k) != region.end() ? 1 : 0);
  });
}

Test Test::from_sequences(const SampleSpace& space, const std::map<std::string, Rational>& phi,
                          const Rational& otherwise) {
  std::vector<Rational> values(space.size(), otherwise);
  for (const auto& [sequence, value] : phi) values[space.index_of(sequence)] = value;
  return Test(space, std::move(values));
}

bool Test::is_deterministic() const {
  return std::all_of(phi_.begin(), phi_.end(), [](const Rational& v) { return v == 0 || v == 1; });
}

Test Test::complement() const {
  std::vector<Rational> out(phi_.size());
  for (std::size_t i = 0; i < phi_.size(); ++i) out[i] = 1 - phi_[i];
  return Test(space_, std::move(out));
}

Test mix(const Rational& lambda, const Test& a, const Test& b) {
  if (!in_unit_interval(lambda)) throw Error(ErrorKind::Domain, "mixing weight must be in [0,1]");
  if (!(a.space() == b.space())) throw Error(ErrorKind::Shape, "cannot mix tests over different sample spaces");
  std::vector<Rational> out(a.space().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = lambda * a.phi(i) + (1 - lambda) * b.phi(i);
  return Test(a.space(), std::move(out));
}

PowerFunction::PowerFunction(std::vector<Rational> thetas, std::vector<Rational> values)
    : thetas_(std::move(thetas)), values_(std::move(values)) {
  if (thetas_.size() != values_.size()) throw Error(ErrorKind::Shape, "power function domain/value size mismatch");
}

const Rational& PowerFunction::at(const Rational& theta) const {
  for (std::size_t i = 0; i < thetas_.size(); ++i) {
    if (thetas_[i] == theta) return values_[i];
  }
  throw Error(ErrorKind::Context, "theta " + to_string(theta) + " is outside the power function's domain");
}

Rational rejection_probability(const Test& test, const World& world) {
  if (!(test.space() == world.space())) {
    throw Error(ErrorKind::Shape, "test and world are defined over different sample spaces");
  }
  Rational total;
  auto probs = world.probabilities();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (sgn(test.phi(i)) != 0 && sgn(probs[i]) != 0) total += probs[i] * test.phi(i);
  }
  return total;
}

PowerFunction power_function(const Test& test, const ParameterSpace& space) {
  std::vector<Rational> values;
  values.reserve(space.size());
  for (const auto& w : space.worlds()) values.push_back(rejection_probability(test, w));
  return PowerFunction(space.thetas(), std::move(values));
}

Rational size(const Test& test, const Hypothesis& hyp, const ParameterSpace& space) {
  auto part = hyp.partition(space);
  if (part.null_indices.empty()) throw Error(ErrorKind::Context, "size needs at least one null world");
  Rational worst = rejection_probability(test, space.world(part.null_indices.front()));
  for (auto i : part.null_indices) worst = std::max(worst, rejection_probability(test, space.world(i)));
  return worst;
}

bool has_level(const Test& test, const Rational& alpha, const Hypothesis& hyp, const ParameterSpace& space) {
  if (!in_unit_interval(alpha)) throw Error(ErrorKind::Domain, "alpha " + to_string(alpha) + " is outside [0,1]");
  return size(test, hyp, space) <= alpha;
}

UnbiasednessReport check_unbiased(const Test& test, const Hypothesis& hyp, const ParameterSpace& space) {
  auto part = hyp.partition(space);
  UnbiasednessReport report;
  if (part.alt_indices.empty()) {
    report.vacuous = true;
    return report;
  }
  // Comparing the weakest alternative with the strongest null world suffices.
  auto power = power_function(test, space);
  std::size_t weakest = part.alt_indices.front();
  for (auto i : part.alt_indices) {
    if (power.values()[i] < power.values()[weakest]) weakest = i;
  }
  std::size_t strongest = part.null_indices.front();
  for (auto i : part.null_indices) {
    if (power.values()[i] > power.values()[strongest]) strongest = i;
  }
  if (power.values()[weakest] < power.values()[strongest]) {
    report.unbiased = false;
    report.alt_theta = space.world(weakest).theta();
    report.null_theta = space.world(strongest).theta();
  }
  return report;
}

bool is_unbiased(const Test& test, const Hypothesis& hyp, const ParameterSpace& space) {
  return check_unbiased(test, hyp, space).unbiased;
}

TestClass TestClass::of(std::vector<Test> members) {
  TestClass cls;
  cls.kind_ = Kind::Extensional;
  cls.members_ = std::move(members);
  return cls;
}

TestClass TestClass::level(const Rational& alpha) {
  TestClass cls;
  cls.kind_ = Kind::LevelAlpha;
  cls.alpha_ = alpha;
  return cls;
}

TestClass TestClass::unbiased_level(const Rational& alpha) {
  TestClass cls;
  cls.kind_ = Kind::UnbiasedLevelAlpha;
  cls.alpha_ = alpha;
  return cls;
}

UmpReport check_ump_in_class(const Test& test, const TestClass& cls, const Hypothesis& hyp,
                             const ParameterSpace& space) {
  auto part = hyp.partition(space);
  UmpReport report;
  auto power = power_function(test, space);

  if (cls.kind() == TestClass::Kind::Extensional) {
    report.member = std::find(cls.members().begin(), cls.members().end(), test) != cls.members().end();
    if (!report.member) return report;
    report.vacuous = part.alt_indices.empty();
    for (auto i : part.alt_indices) {
      const auto& world = space.world(i);
      for (const auto& other : cls.members()) {
        auto rival = rejection_probability(other, world);
        if (rival > power.values()[i]) {
          report.beaten_at = world.theta();
          report.best_power = rival;
          return report;
        }
      }
    }
    report.ump = true;
    return report;
  }

  const bool unbiased_class = cls.kind() == TestClass::Kind::UnbiasedLevelAlpha;
  report.member = has_level(test, cls.alpha(), hyp, space) && (!unbiased_class || is_unbiased(test, hyp, space));
  if (!report.member) return report;
  report.vacuous = part.alt_indices.empty();
  if (report.vacuous) {
    report.ump = true;
    return report;
  }
  auto envelope = power_envelope(space, hyp, cls.alpha(),
                                 unbiased_class ? ConstraintSet::LevelUnbiased : ConstraintSet::LevelOnly);
  for (auto i : part.alt_indices) {
    const auto& theta = space.world(i).theta();
    if (power.values()[i] < envelope.at(theta)) {
      report.beaten_at = theta;
      report.best_power = envelope.at(theta);
      return report;
    }
  }
  report.ump = true;
  return report;
}

bool is_ump_in_class(const Test& test, const TestClass& cls, const Hypothesis& hyp, const ParameterSpace& space) {
  return check_ump_in_class(test, cls, hyp, space).ump;
}

PowerComparison compare_power(const Test& first, const Test& second, const ParameterSpace& space,
                              std::span<const Rational> on) {
  if (on.empty()) throw Error(ErrorKind::Domain, "power comparison needs a nonempty set of worlds");
  PowerComparison out;
  for (const auto& theta : on) {
    const auto& world = space.at(theta);
    auto a = rejection_probability(first, world);
    auto b = rejection_probability(second, world);
    if (a > b) {
      out.greater_at.push_back(theta);
    } else if (a < b) {
      out.less_at.push_back(theta);
    } else {
      out.equal_at.push_back(theta);
    }
  }
  using Ordering = PowerComparison::Ordering;
  if (!out.greater_at.empty() && !out.less_at.empty()) {
    out.ordering = Ordering::Incomparable;
  } else if (!out.greater_at.empty()) {
    out.ordering = Ordering::Greater;
  } else if (!out.less_at.empty()) {
    out.ordering = Ordering::Less;
  } else {
    out.ordering = Ordering::Equal;
  }
  return out;
}

}  // namespace reliabench
