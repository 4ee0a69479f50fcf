#pragma once

#include <random>
#include <string>
#include <vector>

#include "reliabench/hierarchy.hpp"
#include "reliabench/rational.hpp"
#include "reliabench/worlds.hpp"

namespace reliabench::testing {

inline Rational q(const char* text) { return parse_rational(text); }

/// Theta = {3/10, 1/2, 7/10}, n = 4.
inline ParameterSpace urn_space() {
  std::vector<Rational> thetas{q("3/10"), q("1/2"), q("7/10")};
  return make_bernoulli_space(thetas, 4);
}

/// H0: theta >= 1/2 at level 1/16.
inline ProblemContext one_sided_urn(const Rational& alpha = q("1/16")) {
  auto space = urn_space();
  auto hyp = Hypothesis::at_least(space, q("1/2"));
  return ProblemContext(space, hyp, alpha);
}

/// H0: theta = 1/2 at level 1/16.
inline ProblemContext two_sided_urn(const Rational& alpha = q("1/16")) {
  auto space = urn_space();
  auto hyp = Hypothesis::point(space, q("1/2"));
  return ProblemContext(space, hyp, alpha);
}

/// Independent product of per-draw probabilities, walked symbol by symbol
/// over the sequence string (does not use the library's constructors).
inline Rational bernoulli_sequence_probability(const Rational& theta, const std::string& sequence) {
  Rational p(1);
  for (char c : sequence) p *= (c == 'R') ? theta : Rational(1 - theta);
  return p;
}

/// Random rational in [0,1] with a small denominator.
inline Rational random_unit(std::mt19937& rng, int max_den = 12) {
  std::uniform_int_distribution<int> den(1, max_den);
  int d = den(rng);
  std::uniform_int_distribution<int> num(0, d);
  Rational r(num(rng), d);
  r.canonicalize();
  return r;
}

}  // namespace reliabench::testing
