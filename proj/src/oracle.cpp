#include "reliabench/oracle.hpp"

#include <bit>

#include "reliabench/errors.hpp"

namespace reliabench {

namespace {

std::uint64_t checked_test_count(std::size_t sequences, const EnumerationBudget& budget) {
  const std::string required = "2^" + std::to_string(sequences);
  if (sequences >= 64 || (std::uint64_t{1} << sequences) > budget.max_tests) {
    throw Error(ErrorKind::Budget, "enumerating deterministic tests needs " + required +
                                       " tests, above the budget of " + std::to_string(budget.max_tests));
  }
  return std::uint64_t{1} << sequences;
}

// Probabilities of one world scaled to integers over a common denominator.
template <class Int>
struct ScaledWorld {
  std::vector<Int> weights;
  mpz_class denominator;
};

mpz_class common_denominator(const World& world) {
  mpz_class d = 1;
  for (const auto& p : world.probabilities()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), p.get_den_mpz_t());
  return d;
}

__int128 to_int128(const mpz_class& v) {
  // Only called for 0 <= v < 2^120.
  mpz_class hi = v >> 64;
  mpz_class lo = v - (hi << 64);
  return (static_cast<__int128>(hi.get_ui()) << 64) | static_cast<__int128>(lo.get_ui());
}

mpz_class from_int128(__int128 v) {
  mpz_class hi = static_cast<unsigned long>(static_cast<unsigned __int128>(v) >> 64);
  mpz_class lo = static_cast<unsigned long>(static_cast<unsigned __int128>(v) & ~std::uint64_t{0});
  return (hi << 64) + lo;
}

template <class Int>
Int convert(const mpz_class& v) {
  if constexpr (std::is_same_v<Int, mpz_class>) {
    return v;
  } else {
    return to_int128(v);
  }
}

template <class Int>
mpz_class back(const Int& v) {
  if constexpr (std::is_same_v<Int, mpz_class>) {
    return v;
  } else {
    return from_int128(v);
  }
}

// Walks every mask in Gray-code order so each step flips one sequence and
// updates the running sums in O(worlds). The reduction keeps the maximum
// power with the smallest mask on ties, so it does not depend on the order.
template <class Int>
std::pair<mpz_class, std::uint64_t> exhaust(const std::vector<const World*>& nulls, const World& alt,
                                            const Rational& alpha, std::uint64_t count) {
  auto scale = [&](const World& w) {
    ScaledWorld<Int> s;
    s.denominator = common_denominator(w);
    for (const auto& p : w.probabilities()) s.weights.push_back(convert<Int>(p.get_num() * (s.denominator / p.get_den())));
    return s;
  };
  std::vector<ScaledWorld<Int>> null_scaled;
  std::vector<Int> thresholds;
  for (const auto* w : nulls) {
    null_scaled.push_back(scale(*w));
    Rational cap = alpha * null_scaled.back().denominator;
    thresholds.push_back(convert<Int>(mpz_class(cap.get_num() / cap.get_den())));
  }
  auto alt_scaled = scale(alt);

  std::vector<Int> null_sums(nulls.size(), Int(0));
  Int alt_sum(0);
  Int best(-1);
  std::uint64_t best_mask = 0;
  std::uint64_t mask = 0;
  for (std::uint64_t step = 0; step < count; ++step) {
    if (step > 0) {
      const auto bit = static_cast<std::size_t>(std::countr_zero(step));
      const std::uint64_t flag = std::uint64_t{1} << bit;
      const bool adding = (mask & flag) == 0;
      mask ^= flag;
      for (std::size_t j = 0; j < nulls.size(); ++j) {
        if (adding) {
          null_sums[j] += null_scaled[j].weights[bit];
        } else {
          null_sums[j] -= null_scaled[j].weights[bit];
        }
      }
      if (adding) {
        alt_sum += alt_scaled.weights[bit];
      } else {
        alt_sum -= alt_scaled.weights[bit];
      }
    }
    bool level = true;
    for (std::size_t j = 0; j < nulls.size() && level; ++j) level = null_sums[j] <= thresholds[j];
    if (!level) continue;
    if (alt_sum > best || (alt_sum == best && mask < best_mask)) {
      best = alt_sum;
      best_mask = mask;
    }
  }
  return {back<Int>(best), best_mask};
}

}  // namespace

Test deterministic_test(const SampleSpace& space, std::uint64_t mask) {
  std::vector<Rational> phi(space.size());
  for (std::size_t i = 0; i < phi.size() && i < 64; ++i) {
    if ((mask >> i) & 1u) phi[i] = 1;
  }
  return Test(space, std::move(phi));
}

DeterministicTests::DeterministicTests(SampleSpace space, EnumerationBudget budget)
    : space_(std::move(space)), count_(checked_test_count(space_.size(), budget)) {}

DeterministicTests enumerate_deterministic_tests(int n, const std::string& alphabet, EnumerationBudget budget) {
  return DeterministicTests(SampleSpace(alphabet, n), budget);
}

DeterministicOptimum best_deterministic_power(const ParameterSpace& space, const Hypothesis& hyp,
                                              const Rational& alpha, const Rational& alt_theta,
                                              EnumerationBudget budget) {
  if (!in_unit_interval(alpha)) throw Error(ErrorKind::Domain, "alpha " + to_string(alpha) + " is outside [0,1]");
  const auto count = checked_test_count(space.sample_space().size(), budget);
  auto part = hyp.partition(space);
  std::vector<const World*> nulls;
  for (auto j : part.null_indices) nulls.push_back(&space.world(j));
  const World& alt = space.at(alt_theta);

  bool narrow = common_denominator(alt) < (mpz_class(1) << 120);
  for (const auto* w : nulls) narrow = narrow && common_denominator(*w) < (mpz_class(1) << 120);
  auto [numerator, mask] = narrow ? exhaust<__int128>(nulls, alt, alpha, count) : exhaust<mpz_class>(nulls, alt, alpha, count);

  Rational power(numerator, common_denominator(alt));
  power.canonicalize();
  return DeterministicOptimum{power, mask, deterministic_test(space.sample_space(), mask)};
}

EnvelopeCertification certify_envelope(const PowerEnvelope& envelope, const ParameterSpace& space,
                                       const Hypothesis& hyp, const Rational& alpha, EnumerationBudget budget) {
  EnvelopeCertification report;
  if (envelope.thetas.empty()) {
    report.vacuous = true;
    return report;
  }
  checked_test_count(space.sample_space().size(), budget);
  for (std::size_t i = 0; i < envelope.thetas.size(); ++i) {
    auto best = best_deterministic_power(space, hyp, alpha, envelope.thetas[i], budget);
    Rational margin = envelope.values[i] - best.power;
    if (margin < 0 && report.certified) {
      report.certified = false;
      report.violation_theta = envelope.thetas[i];
      report.violation_mask = best.mask;
    }
    report.thetas.push_back(envelope.thetas[i]);
    report.margins.push_back(margin);
    report.deterministic_best.push_back(std::move(best));
  }
  return report;
}

}  // namespace reliabench
