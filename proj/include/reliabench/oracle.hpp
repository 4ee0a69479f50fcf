#pragma once

#include <cstdint>
#include <iterator>
#include <optional>
#include <vector>

#include "reliabench/construct.hpp"
#include "reliabench/rational.hpp"
#include "reliabench/testkit.hpp"
#include "reliabench/worlds.hpp"

namespace reliabench {

struct EnumerationBudget {
  std::uint64_t max_tests = std::uint64_t{1} << 20;
};

/// Deterministic test whose rejection region is the set bits of `mask`
/// (bit i = sequence index i).
Test deterministic_test(const SampleSpace& space, std::uint64_t mask);

/// Every {0,1}-valued test over a sample space, streamed in ascending mask
/// order. Construction refuses (ErrorKind::Budget) when 2^|space| exceeds
/// the budget.
class DeterministicTests {
 public:
  DeterministicTests(SampleSpace space, EnumerationBudget budget);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Test;
    using difference_type = std::ptrdiff_t;

    iterator(const SampleSpace* space, std::uint64_t mask) : space_(space), mask_(mask) {}
    Test operator*() const { return deterministic_test(*space_, mask_); }
    iterator& operator++() {
      ++mask_;
      return *this;
    }
    bool operator==(const iterator& other) const { return mask_ == other.mask_; }
    std::uint64_t mask() const { return mask_; }

   private:
    const SampleSpace* space_;
    std::uint64_t mask_;
  };

  iterator begin() const { return {&space_, 0}; }
  iterator end() const { return {&space_, count_}; }
  std::uint64_t count() const noexcept { return count_; }

 private:
  SampleSpace space_;
  std::uint64_t count_;
};

DeterministicTests enumerate_deterministic_tests(int n, const std::string& alphabet,
                                                 EnumerationBudget budget = {});

struct DeterministicOptimum {
  Rational power;
  std::uint64_t mask = 0;  // smallest mask among ties
  Test test;
};

/// Most powerful deterministic level-alpha test at `alt_theta`, by exhaustion.
DeterministicOptimum best_deterministic_power(const ParameterSpace& space, const Hypothesis& hyp,
                                              const Rational& alpha, const Rational& alt_theta,
                                              EnumerationBudget budget = {});

struct EnvelopeCertification {
  bool certified = true;
  bool vacuous = false;
  std::vector<Rational> thetas;
  /// envelope - best deterministic power, per alternative.
  std::vector<Rational> margins;
  std::vector<DeterministicOptimum> deterministic_best;
  std::optional<Rational> violation_theta;
  std::optional<std::uint64_t> violation_mask;
};

EnvelopeCertification certify_envelope(const PowerEnvelope& envelope, const ParameterSpace& space,
                                       const Hypothesis& hyp, const Rational& alpha, EnumerationBudget budget = {});

}  // namespace reliabench
