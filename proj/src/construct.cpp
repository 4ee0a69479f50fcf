#include "reliabench/construct.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "reliabench/errors.hpp"

namespace reliabench {

Statistic red_count_statistic(const SampleSpace& space) {
  Statistic out(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) out[i] = space.red_count(i);
  return out;
}

namespace {

void require_alpha(const Rational& alpha) {
  if (!in_unit_interval(alpha)) throw Error(ErrorKind::Domain, "alpha " + to_string(alpha) + " is outside [0,1]");
}

struct RatioKey {
  bool infinite = false;
  Rational ratio;  // alt / null when finite
};

// Strictly greater likelihood ratio first.
bool ranks_before(const RatioKey& a, const RatioKey& b) {
  if (a.infinite != b.infinite) return a.infinite;
  if (a.infinite) return false;
  return a.ratio > b.ratio;
}

bool same_ratio(const RatioKey& a, const RatioKey& b) {
  return a.infinite == b.infinite && (a.infinite || a.ratio == b.ratio);
}

std::map<int, Rational> statistic_distribution(const World& world, const Statistic& statistic) {
  std::map<int, Rational> out;
  for (std::size_t i = 0; i < statistic.size(); ++i) out[statistic[i]] += world.probability(i);
  return out;
}

// Sequences that every world weights identically are interchangeable in any
// program whose rows are rejection probabilities, so the polytope is built
// over these classes and expanded back to a per-sequence test.
class TestPolytope {
 public:
  TestPolytope(const ParameterSpace& space, const Hypothesis& hyp, const Rational& alpha, ConstraintSet constraints)
      : space_(space), part_(hyp.partition(space)), alpha_(alpha), constraints_(constraints) {
    require_alpha(alpha);
    const auto& sample = space.sample_space();
    std::map<std::vector<Rational>, std::size_t> class_of;
    class_index_.resize(sample.size());
    for (std::size_t x = 0; x < sample.size(); ++x) {
      std::vector<Rational> key;
      key.reserve(space.size());
      for (const auto& w : space.worlds()) key.push_back(w.probability(x));
      auto [it, inserted] = class_of.emplace(std::move(key), class_of.size());
      class_index_[x] = it->second;
    }
    mass_.assign(space.size(), std::vector<Rational>(class_of.size()));
    for (std::size_t w = 0; w < space.size(); ++w) {
      for (std::size_t x = 0; x < sample.size(); ++x) mass_[w][class_index_[x]] += space.world(w).probability(x);
    }
  }

  const Hypothesis::Partition& partition() const { return part_; }
  std::size_t classes() const { return mass_.front().size(); }

  LinearProgram base_program() const {
    LinearProgram lp(classes());
    for (auto j : part_.null_indices) lp.add_constraint(mass_[j], Relation::LessEqual, alpha_);
    if (constraints_ == ConstraintSet::LevelUnbiased) {
      for (auto a : part_.alt_indices) {
        for (auto j : part_.null_indices) {
          std::vector<Rational> row(classes());
          for (std::size_t c = 0; c < classes(); ++c) row[c] = mass_[a][c] - mass_[j][c];
          lp.add_constraint(std::move(row), Relation::GreaterEqual, Rational(0));
        }
      }
    }
    return lp;
  }

  const std::vector<Rational>& power_row(std::size_t world) const { return mass_[world]; }

  Test expand(const std::vector<Rational>& class_phi) const {
    std::vector<Rational> phi(class_index_.size());
    for (std::size_t x = 0; x < phi.size(); ++x) phi[x] = class_phi[class_index_[x]];
    return Test(space_.sample_space(), std::move(phi));
  }

 private:
  const ParameterSpace& space_;
  Hypothesis::Partition part_;
  Rational alpha_;
  ConstraintSet constraints_;
  std::vector<std::size_t> class_index_;
  std::vector<std::vector<Rational>> mass_;  // [world][class]
};

}  // namespace

Test mp_test_simple(const World& null_world, const World& alt_world, const Rational& alpha) {
  require_alpha(alpha);
  if (!(null_world.space() == alt_world.space())) {
    throw Error(ErrorKind::Shape, "null and alternative worlds use different sample spaces");
  }
  if (null_world.theta() == alt_world.theta()) {
    throw Error(ErrorKind::Degenerate, "null and alternative worlds coincide at theta " + to_string(null_world.theta()));
  }
  const auto& space = null_world.space();
  std::vector<std::size_t> ranked;
  std::vector<RatioKey> keys(space.size());
  for (std::size_t x = 0; x < space.size(); ++x) {
    const auto& p0 = null_world.probability(x);
    const auto& p1 = alt_world.probability(x);
    if (sgn(p0) == 0 && sgn(p1) == 0) continue;  // outside both supports
    keys[x] = sgn(p0) == 0 ? RatioKey{true, Rational(0)} : RatioKey{false, p1 / p0};
    ranked.push_back(x);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](std::size_t a, std::size_t b) { return ranks_before(keys[a], keys[b]); });

  std::vector<Rational> phi(space.size());
  Rational budget = alpha;
  for (std::size_t begin = 0; begin < ranked.size();) {
    std::size_t end = begin;
    Rational cost;
    while (end < ranked.size() && same_ratio(keys[ranked[begin]], keys[ranked[end]])) {
      cost += null_world.probability(ranked[end]);
      ++end;
    }
    Rational share = cost <= budget ? Rational(1) : Rational(budget / cost);
    for (std::size_t i = begin; i < end; ++i) phi[ranked[i]] = share;
    budget -= share * cost;
    if (share < 1) break;
    begin = end;
  }
  return Test(space, std::move(phi));
}

bool check_mlr(const ParameterSpace& space, const Statistic& statistic) {
  if (statistic.size() != space.sample_space().size()) {
    throw Error(ErrorKind::Shape, "statistic must assign a value to every sequence");
  }
  std::vector<std::size_t> order(space.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return space.world(a).theta() < space.world(b).theta(); });
  std::vector<std::map<int, Rational>> dist;
  for (auto w : order) dist.push_back(statistic_distribution(space.world(w), statistic));

  for (std::size_t lo = 0; lo < dist.size(); ++lo) {
    for (std::size_t hi = lo + 1; hi < dist.size(); ++hi) {
      // Previous defined ratio as (numerator, denominator); denominator 0 means +inf.
      std::optional<std::pair<Rational, Rational>> prev;
      for (const auto& [t, p_lo] : dist[lo]) {
        const auto& p_hi = dist[hi].at(t);
        if (sgn(p_lo) == 0 && sgn(p_hi) == 0) continue;
        if (prev) {
          const auto& [prev_hi, prev_lo] = *prev;
          const bool prev_inf = sgn(prev_lo) == 0;
          const bool cur_inf = sgn(p_lo) == 0;
          if (prev_inf && !cur_inf) return false;
          if (!prev_inf && !cur_inf && prev_hi * p_lo > p_hi * prev_lo) return false;
        }
        prev = {p_hi, p_lo};
      }
    }
  }
  return true;
}

bool check_mlr(const ParameterSpace& space, const Hypothesis& hyp) {
  hyp.partition(space);
  return check_mlr(space, red_count_statistic(space.sample_space()));
}

Test karlin_rubin_test(const ParameterSpace& space, const Hypothesis& hyp, const Rational& alpha) {
  return karlin_rubin_test(space, hyp, alpha, red_count_statistic(space.sample_space()));
}

Test karlin_rubin_test(const ParameterSpace& space, const Hypothesis& hyp, const Rational& alpha,
                       const Statistic& statistic) {
  require_alpha(alpha);
  if (hyp.alt_thetas().empty()) throw Error(ErrorKind::Context, "one-sided test needs at least one alternative world");
  hyp.partition(space);
  const auto& nulls = hyp.null_thetas();
  const auto& alts = hyp.alt_thetas();
  bool reject_small;
  Rational boundary;
  if (nulls.front() > alts.back()) {
    reject_small = true;  // H0: theta >= theta*
    boundary = nulls.front();
  } else if (nulls.back() < alts.front()) {
    reject_small = false;  // H0: theta <= theta*
    boundary = nulls.back();
  } else {
    throw Error(ErrorKind::Precondition, "hypothesis is not one-sided: null worlds lie on both sides of an alternative");
  }
  if (!check_mlr(space, statistic)) {
    throw Error(ErrorKind::Precondition, "parameter space lacks a monotone likelihood ratio in the statistic");
  }

  auto dist = statistic_distribution(space.at(boundary), statistic);
  std::vector<std::pair<int, Rational>> order(dist.begin(), dist.end());
  if (!reject_small) std::reverse(order.begin(), order.end());
  std::map<int, Rational> phi_of;
  Rational budget = alpha;
  for (const auto& [t, cost] : order) {
    if (cost <= budget) {
      phi_of[t] = 1;
      budget -= cost;
    } else {
      phi_of[t] = budget / cost;
      break;
    }
  }
  std::vector<Rational> phi(statistic.size());
  for (std::size_t x = 0; x < phi.size(); ++x) {
    auto it = phi_of.find(statistic[x]);
    if (it != phi_of.end()) phi[x] = it->second;
  }
  Test test(space.sample_space(), std::move(phi));
  auto achieved = size(test, hyp, space);
  if (achieved != alpha) {
    throw Error(ErrorKind::Precondition, "threshold test has size " + to_string(achieved) + " over the null, not " +
                                             to_string(alpha));
  }
  return test;
}

const Rational& PowerEnvelope::at(const Rational& theta) const {
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (thetas[i] == theta) return values[i];
  }
  throw Error(ErrorKind::Context, "theta " + to_string(theta) + " is not an alternative of this envelope");
}

namespace {

PowerEnvelope envelope_over(const TestPolytope& polytope, const ParameterSpace& space) {
  PowerEnvelope envelope;
  for (auto a : polytope.partition().alt_indices) {
    auto lp = polytope.base_program();
    lp.set_objective(polytope.power_row(a));
    auto solution = solve_lp(lp);
    if (!solution.optimal()) {
      envelope.status = solution.status;
      envelope.thetas.clear();
      envelope.values.clear();
      envelope.maximizers.clear();
      return envelope;
    }
    envelope.thetas.push_back(space.world(a).theta());
    envelope.values.push_back(solution.value);
    envelope.maximizers.push_back(polytope.expand(solution.assignment));
  }
  return envelope;
}

}  // namespace

PowerEnvelope power_envelope(const ParameterSpace& space, const Hypothesis& hyp, const Rational& alpha,
                             ConstraintSet constraints) {
  TestPolytope polytope(space, hyp, alpha, constraints);
  // No alternatives: the envelope is empty, not an error.
  if (polytope.partition().alt_indices.empty()) return PowerEnvelope{};
  return envelope_over(polytope, space);
}

UmpDecision decide_ump(const ParameterSpace& space, const Hypothesis& hyp, const Rational& alpha,
                       ConstraintSet constraints) {
  TestPolytope polytope(space, hyp, alpha, constraints);
  const auto& part = polytope.partition();
  if (part.alt_indices.empty()) {
    throw Error(ErrorKind::Context, "UMP decision needs at least one alternative world");
  }
  UmpDecision decision;
  decision.envelope = envelope_over(polytope, space);
  if (!decision.envelope.feasible()) {
    decision.infeasible = true;
    return decision;
  }
  const auto& env = decision.envelope;

  auto pin = [&](LinearProgram& lp, std::size_t alt_position) {
    lp.add_constraint(polytope.power_row(part.alt_indices[alt_position]), Relation::Equal,
                      env.values[alt_position]);
  };

  // Simultaneous attainment; among attaining tests prefer the least total
  // rejection over the null worlds.
  auto joint = polytope.base_program();
  for (std::size_t p = 0; p < part.alt_indices.size(); ++p) pin(joint, p);
  std::vector<Rational> objective(polytope.classes());
  for (auto j : part.null_indices) {
    for (std::size_t c = 0; c < objective.size(); ++c) objective[c] -= polytope.power_row(j)[c];
  }
  joint.set_objective(std::move(objective));
  auto solution = solve_lp(joint);
  if (solution.optimal()) {
    decision.exists = true;
    decision.witness = polytope.expand(solution.assignment);
    return decision;
  }

  std::vector<std::size_t> anchored{0};
  for (std::size_t b = 1; b < part.alt_indices.size(); ++b) {
    auto lp = polytope.base_program();
    for (auto p : anchored) pin(lp, p);
    lp.set_objective(polytope.power_row(part.alt_indices[b]));
    auto best = solve_lp(lp);
    if (best.optimal() && best.value < env.values[b]) {
      NonExistenceCertificate cert;
      cert.theta_a = env.thetas[anchored.front()];
      for (auto p : anchored) cert.anchored.push_back(env.thetas[p]);
      cert.theta_b = env.thetas[b];
      cert.constrained_max = best.value;
      cert.envelope_b = env.values[b];
      decision.certificate = std::move(cert);
      return decision;
    }
    anchored.push_back(b);
  }
  throw Error(ErrorKind::Validation, "simultaneous attainment is infeasible but no certificate was found");
}

UmpDecision decide_umpu(const ParameterSpace& space, const Hypothesis& hyp, const Rational& alpha) {
  return decide_ump(space, hyp, alpha, ConstraintSet::LevelUnbiased);
}

}  // namespace reliabench
