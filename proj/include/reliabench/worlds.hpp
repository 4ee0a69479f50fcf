#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reliabench/rational.hpp"

namespace reliabench {

/// All outcome sequences of a fixed length over a finite alphabet of
/// single-character symbols. Sequences are indexed in base-|alphabet|
/// order with the first draw most significant, so for alphabet "RN" and
/// length 2 the order is RR, RN, NR, NN.
///
/// The first alphabet symbol plays the role of "Red": red_count() is the
/// default count statistic used by the optimal-test constructions.
class SampleSpace {
 public:
  static constexpr std::size_t kDefaultMaxSequences = std::size_t{1} << 20;

  SampleSpace(std::string alphabet, int length, std::size_t max_sequences = kDefaultMaxSequences);

  const std::string& alphabet() const noexcept { return alphabet_; }
  int length() const noexcept { return length_; }
  std::size_t size() const noexcept { return size_; }

  std::string sequence(std::size_t index) const;
  std::size_t index_of(std::string_view sequence) const;
  int count(std::size_t index, char symbol) const;
  int red_count(std::size_t index) const { return count(index, alphabet_.front()); }

  bool operator==(const SampleSpace& other) const noexcept {
    return alphabet_ == other.alphabet_ && length_ == other.length_;
  }

 private:
  std::string alphabet_;
  int length_;
  std::size_t size_;
};

/// A possible world: a parameter value together with the distribution it
/// induces over the sample space.
class World {
 public:
  /// Validates non-negativity and exact normalisation.
  World(Rational theta, SampleSpace space, std::vector<Rational> probabilities);

  const Rational& theta() const noexcept { return theta_; }
  const SampleSpace& space() const noexcept { return space_; }
  const Rational& probability(std::size_t index) const { return probabilities_.at(index); }
  const Rational& probability(std::string_view sequence) const {
    return probabilities_[space_.index_of(sequence)];
  }
  std::span<const Rational> probabilities() const noexcept { return probabilities_; }

 private:
  Rational theta_;
  SampleSpace space_;
  std::vector<Rational> probabilities_;
};

/// IID draws with Red probability theta over alphabet "RN".
World build_iid_bernoulli(const Rational& theta, int n);

/// IID draws over an arbitrary alphabet; `per_draw[i]` is the probability of
/// alphabet symbol i on every draw.
World build_iid(const Rational& theta, const SampleSpace& space, std::span<const Rational> per_draw);

/// Wraps a hand-written distribution. Sequences missing from `distribution`
/// get probability zero.
World make_explicit_world(const Rational& theta, const SampleSpace& space,
                          const std::map<std::string, Rational>& distribution);

/// Finite ordered set of worlds over one sample space, thetas pairwise distinct.
class ParameterSpace {
 public:
  explicit ParameterSpace(std::vector<World> worlds);

  std::size_t size() const noexcept { return worlds_.size(); }
  const World& world(std::size_t i) const { return worlds_.at(i); }
  const std::vector<World>& worlds() const noexcept { return worlds_; }
  const SampleSpace& sample_space() const noexcept { return worlds_.front().space(); }
  std::vector<Rational> thetas() const;
  std::optional<std::size_t> find(const Rational& theta) const;
  const World& at(const Rational& theta) const;

 private:
  std::vector<World> worlds_;
};

/// IID Bernoulli worlds at the given thetas, in the given order.
ParameterSpace make_bernoulli_space(std::span<const Rational> thetas, int n);

/// Proportions a/marble_count for a = 0..marble_count.
ParameterSpace make_simple_grid(int marble_count, int n);

/// Distinct proportions a/b for b in [b_min, b_max], a = 0..b, ascending.
ParameterSpace make_compound_grid(int b_min, int b_max, int n);

/// Partition of a parameter space into worlds where H0 holds (null) and the
/// rest (alternatives). Stored by theta, so it can be re-applied to any
/// reordering of the same space.
class Hypothesis {
 public:
  Hypothesis(const ParameterSpace& space, std::vector<Rational> null_thetas);

  static Hypothesis where(const ParameterSpace& space, const std::function<bool(const Rational&)>& is_null);
  static Hypothesis at_least(const ParameterSpace& space, const Rational& bound);
  static Hypothesis at_most(const ParameterSpace& space, const Rational& bound);
  static Hypothesis point(const ParameterSpace& space, const Rational& value);
  static Hypothesis interval(const ParameterSpace& space, const Rational& lo, const Rational& hi);

  /// Sorted ascending.
  const std::vector<Rational>& null_thetas() const noexcept { return null_; }
  const std::vector<Rational>& alt_thetas() const noexcept { return alt_; }
  bool is_null(const Rational& theta) const;

  struct Partition {
    std::vector<std::size_t> null_indices;
    std::vector<std::size_t> alt_indices;
  };
  /// Indices into `space`, in space order. Throws if `space` holds a theta
  /// this hypothesis does not know about, or misses one it does.
  Partition partition(const ParameterSpace& space) const;

 private:
  std::vector<Rational> null_;
  std::vector<Rational> alt_;
};

}  // namespace reliabench
