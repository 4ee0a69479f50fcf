#pragma once

#include <optional>
#include <vector>

#include "reliabench/lp.hpp"
#include "reliabench/rational.hpp"
#include "reliabench/testkit.hpp"
#include "reliabench/worlds.hpp"

namespace reliabench {

/// Integer statistic per sequence index.
using Statistic = std::vector<int>;

/// Red count k, the sufficient statistic of the IID Bernoulli model.
Statistic red_count_statistic(const SampleSpace& space);

/// Most powerful level-alpha test of a simple null against a simple
/// alternative. Sequences are ranked by likelihood ratio alt/null (zero null
/// probability ranks first); whole ratio groups are rejected while the budget
/// lasts and the boundary group shares one fractional phi that spends the
/// remaining budget exactly.
Test mp_test_simple(const World& null_world, const World& alt_world, const Rational& alpha);

/// Monotone likelihood ratio in `statistic`: for every theta1 < theta2, the
/// ratio P_theta2(T = t) / P_theta1(T = t) is nondecreasing in t over values
/// where either probability is positive (positive over zero counts as +inf).
bool check_mlr(const ParameterSpace& space, const Statistic& statistic);
bool check_mlr(const ParameterSpace& space, const Hypothesis& hyp);

/// One-sided threshold test on `statistic`, randomized at the cut so the
/// boundary world rejects with probability exactly alpha. The null must be an
/// upper set (reject small values) or a lower set (reject large values) of
/// the theta-ordered parameter space.
Test karlin_rubin_test(const ParameterSpace& space, const Hypothesis& hyp, const Rational& alpha);
Test karlin_rubin_test(const ParameterSpace& space, const Hypothesis& hyp, const Rational& alpha,
                       const Statistic& statistic);

enum class ConstraintSet {
  LevelOnly,      // power <= alpha at every null world
  LevelUnbiased,  // plus power(alt) >= power(null) for every pair
};

/// Pointwise maximum attainable power over the alternatives.
struct PowerEnvelope {
  LpStatus status = LpStatus::Optimal;
  std::vector<Rational> thetas;  // alternatives, parameter-space order
  std::vector<Rational> values;
  /// The LP maximiser that attains each value.
  std::vector<Test> maximizers;

  bool feasible() const noexcept { return status == LpStatus::Optimal; }
  const Rational& at(const Rational& theta) const;
};

PowerEnvelope power_envelope(const ParameterSpace& space, const Hypothesis& hyp, const Rational& alpha,
                             ConstraintSet constraints);

/// Why no test attains the envelope everywhere: holding power at every
/// `anchored` alternative (first is theta_a) at its envelope value, the best
/// power reachable at theta_b is `constrained_max`, strictly below
/// `envelope_b`. Usually `anchored` is just {theta_a}.
struct NonExistenceCertificate {
  Rational theta_a;
  std::vector<Rational> anchored;
  Rational theta_b;
  Rational constrained_max;
  Rational envelope_b;
};

struct UmpDecision {
  bool exists = false;
  /// The constraint set itself was infeasible (no verdict possible).
  bool infeasible = false;
  std::optional<Test> witness;
  std::optional<NonExistenceCertificate> certificate;
  PowerEnvelope envelope;
};

/// Decides whether one test attains the envelope at every alternative.
UmpDecision decide_ump(const ParameterSpace& space, const Hypothesis& hyp, const Rational& alpha,
                       ConstraintSet constraints = ConstraintSet::LevelOnly);

/// decide_ump over unbiased level-alpha tests.
UmpDecision decide_umpu(const ParameterSpace& space, const Hypothesis& hyp, const Rational& alpha);

}  // namespace reliabench
