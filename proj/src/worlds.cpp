#include "reliabench/worlds.hpp"

#include <algorithm>
#include <set>

#include "reliabench/errors.hpp"

namespace reliabench {

SampleSpace::SampleSpace(std::string alphabet, int length, std::size_t max_sequences)
    : alphabet_(std::move(alphabet)), length_(length), size_(1) {
  if (alphabet_.empty()) throw Error(ErrorKind::Domain, "alphabet must be nonempty");
  if (std::set<char>(alphabet_.begin(), alphabet_.end()).size() != alphabet_.size()) {
    throw Error(ErrorKind::Domain, "alphabet symbols must be distinct: \"" + alphabet_ + "\"");
  }
  if (length_ < 1) throw Error(ErrorKind::Domain, "sample size n must be at least 1");
  for (int i = 0; i < length_; ++i) {
    if (size_ > max_sequences / alphabet_.size()) {
      throw Error(ErrorKind::Budget, "sample space |A|^n = " + std::to_string(alphabet_.size()) + "^" +
                                         std::to_string(length_) + " exceeds the limit of " +
                                         std::to_string(max_sequences) + " sequences");
    }
    size_ *= alphabet_.size();
  }
}

std::string SampleSpace::sequence(std::size_t index) const {
  if (index >= size_) throw Error(ErrorKind::Shape, "sequence index out of range");
  std::string out(static_cast<std::size_t>(length_), ' ');
  const std::size_t base = alphabet_.size();
  for (int pos = length_ - 1; pos >= 0; --pos) {
    out[static_cast<std::size_t>(pos)] = alphabet_[index % base];
    index /= base;
  }
  return out;
}

std::size_t SampleSpace::index_of(std::string_view sequence) const {
  if (sequence.size() != static_cast<std::size_t>(length_)) {
    throw Error(ErrorKind::Shape, "sequence \"" + std::string(sequence) + "\" has length " +
                                      std::to_string(sequence.size()) + ", expected " + std::to_string(length_));
  }
  std::size_t index = 0;
  for (char c : sequence) {
    auto digit = alphabet_.find(c);
    if (digit == std::string::npos) {
      throw Error(ErrorKind::Shape, "symbol '" + std::string(1, c) + "' is not in alphabet \"" + alphabet_ + "\"");
    }
    index = index * alphabet_.size() + digit;
  }
  return index;
}

int SampleSpace::count(std::size_t index, char symbol) const {
  auto digit = alphabet_.find(symbol);
  if (digit == std::string::npos) return 0;
  const std::size_t base = alphabet_.size();
  int hits = 0;
  for (int pos = 0; pos < length_; ++pos) {
    if (index % base == digit) ++hits;
    index /= base;
  }
  return hits;
}

World::World(Rational theta, SampleSpace space, std::vector<Rational> probabilities)
    : theta_(std::move(theta)), space_(std::move(space)), probabilities_(std::move(probabilities)) {
  if (probabilities_.size() != space_.size()) {
    throw Error(ErrorKind::Shape, "world has " + std::to_string(probabilities_.size()) +
                                      " probabilities for a sample space of " + std::to_string(space_.size()));
  }
  Rational total;
  std::string defects;
  for (std::size_t i = 0; i < probabilities_.size(); ++i) {
    probabilities_[i].canonicalize();
    if (probabilities_[i] < 0) {
      defects += "; negative probability " + to_string(probabilities_[i]) + " at " + space_.sequence(i);
    }
    total += probabilities_[i];
  }
  if (total != 1) defects += "; probabilities sum to " + to_string(total) + ", not 1";
  if (!defects.empty()) {
    throw Error(ErrorKind::Validation, "invalid distribution for theta " + to_string(theta_) + defects);
  }
}

World build_iid(const Rational& theta, const SampleSpace& space, std::span<const Rational> per_draw) {
  if (per_draw.size() != space.alphabet().size()) {
    throw Error(ErrorKind::Shape, "per-draw distribution must have one entry per alphabet symbol");
  }
  Rational total;
  for (const auto& p : per_draw) {
    if (p < 0) throw Error(ErrorKind::Domain, "per-draw probability " + to_string(p) + " is negative");
    total += p;
  }
  if (total != 1) throw Error(ErrorKind::Validation, "per-draw probabilities sum to " + to_string(total));

  const std::size_t base = per_draw.size();
  std::vector<Rational> probs(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    Rational p(1);
    std::size_t rest = i;
    for (int pos = 0; pos < space.length(); ++pos) {
      p *= per_draw[rest % base];
      rest /= base;
    }
    probs[i] = p;
  }
  return World(theta, space, std::move(probs));
}

World build_iid_bernoulli(const Rational& theta, int n) {
  if (!in_unit_interval(theta)) throw Error(ErrorKind::Domain, "theta " + to_string(theta) + " is outside [0,1]");
  if (n < 1) throw Error(ErrorKind::Domain, "sample size n must be at least 1");
  SampleSpace space("RN", n);
  // theta^k (1-theta)^(n-k), shared across the C(n,k) sequences with k reds.
  std::vector<Rational> by_count(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    by_count[static_cast<std::size_t>(k)] =
        power(theta, static_cast<unsigned>(k)) * power(Rational(1) - theta, static_cast<unsigned>(n - k));
  }
  std::vector<Rational> probs(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) probs[i] = by_count[static_cast<std::size_t>(space.red_count(i))];
  return World(theta, std::move(space), std::move(probs));
}

World make_explicit_world(const Rational& theta, const SampleSpace& space,
                          const std::map<std::string, Rational>& distribution) {
  std::vector<Rational> probs(space.size());
  for (const auto& [sequence, p] : distribution) probs[space.index_of(sequence)] = p;
  return World(theta, space, std::move(probs));
}

ParameterSpace::ParameterSpace(std::vector<World> worlds) : worlds_(std::move(worlds)) {
  if (worlds_.empty()) throw Error(ErrorKind::Domain, "parameter space must contain at least one world");
  std::set<Rational> seen;
  for (const auto& w : worlds_) {
    if (!(w.space() == worlds_.front().space())) {
      throw Error(ErrorKind::Shape, "all worlds must share one sample space");
    }
    if (!seen.insert(w.theta()).second) {
      throw Error(ErrorKind::Validation, "duplicate theta " + to_string(w.theta()) + " in parameter space");
    }
  }
}

std::vector<Rational> ParameterSpace::thetas() const {
  std::vector<Rational> out;
  out.reserve(worlds_.size());
  for (const auto& w : worlds_) out.push_back(w.theta());
  return out;
}

std::optional<std::size_t> ParameterSpace::find(const Rational& theta) const {
  for (std::size_t i = 0; i < worlds_.size(); ++i) {
    if (worlds_[i].theta() == theta) return i;
  }
  return std::nullopt;
}

const World& ParameterSpace::at(const Rational& theta) const {
  auto i = find(theta);
  if (!i) throw Error(ErrorKind::Context, "theta " + to_string(theta) + " is not in the parameter space");
  return worlds_[*i];
}

ParameterSpace make_bernoulli_space(std::span<const Rational> thetas, int n) {
  std::vector<World> worlds;
  worlds.reserve(thetas.size());
  for (const auto& t : thetas) worlds.push_back(build_iid_bernoulli(t, n));
  return ParameterSpace(std::move(worlds));
}

ParameterSpace make_simple_grid(int marble_count, int n) {
  if (marble_count < 1) throw Error(ErrorKind::Domain, "marble count must be at least 1");
  std::vector<Rational> thetas;
  for (int a = 0; a <= marble_count; ++a) thetas.emplace_back(a, marble_count);
  for (auto& t : thetas) t.canonicalize();
  return make_bernoulli_space(thetas, n);
}

ParameterSpace make_compound_grid(int b_min, int b_max, int n) {
  if (b_min < 1 || b_max < b_min) {
    throw Error(ErrorKind::Domain, "compound grid needs 1 <= b_min <= b_max, got [" + std::to_string(b_min) + ", " +
                                       std::to_string(b_max) + "]");
  }
  std::set<Rational> distinct;
  for (int b = b_min; b <= b_max; ++b) {
    for (int a = 0; a <= b; ++a) {
      Rational t(a, b);
      t.canonicalize();
      distinct.insert(t);
    }
  }
  std::vector<Rational> thetas(distinct.begin(), distinct.end());
  return make_bernoulli_space(thetas, n);
}

Hypothesis::Hypothesis(const ParameterSpace& space, std::vector<Rational> null_thetas) {
  std::set<Rational> nulls;
  for (auto& t : null_thetas) {
    t.canonicalize();
    if (!space.find(t)) {
      throw Error(ErrorKind::Context, "null theta " + to_string(t) + " is not in the parameter space");
    }
    nulls.insert(t);
  }
  if (nulls.empty()) throw Error(ErrorKind::Context, "hypothesis has no null worlds in the parameter space");
  null_.assign(nulls.begin(), nulls.end());
  for (const auto& t : space.thetas()) {
    if (!nulls.contains(t)) alt_.push_back(t);
  }
  std::sort(alt_.begin(), alt_.end());
}

Hypothesis Hypothesis::where(const ParameterSpace& space, const std::function<bool(const Rational&)>& is_null) {
  std::vector<Rational> nulls;
  for (const auto& t : space.thetas()) {
    if (is_null(t)) nulls.push_back(t);
  }
  return Hypothesis(space, std::move(nulls));
}

Hypothesis Hypothesis::at_least(const ParameterSpace& space, const Rational& bound) {
  return where(space, [&](const Rational& t) { return t >= bound; });
}

Hypothesis Hypothesis::at_most(const ParameterSpace& space, const Rational& bound) {
  return where(space, [&](const Rational& t) { return t <= bound; });
}

Hypothesis Hypothesis::point(const ParameterSpace& space, const Rational& value) {
  return where(space, [&](const Rational& t) { return t == value; });
}

Hypothesis Hypothesis::interval(const ParameterSpace& space, const Rational& lo, const Rational& hi) {
  if (lo > hi) throw Error(ErrorKind::Domain, "interval hypothesis needs lo <= hi");
  return where(space, [&](const Rational& t) { return t >= lo && t <= hi; });
}

bool Hypothesis::is_null(const Rational& theta) const {
  return std::binary_search(null_.begin(), null_.end(), theta);
}

Hypothesis::Partition Hypothesis::partition(const ParameterSpace& space) const {
  if (space.size() != null_.size() + alt_.size()) {
    throw Error(ErrorKind::Shape, "hypothesis was built for a different parameter space");
  }
  Partition out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto& t = space.world(i).theta();
    if (is_null(t)) {
      out.null_indices.push_back(i);
    } else if (std::binary_search(alt_.begin(), alt_.end(), t)) {
      out.alt_indices.push_back(i);
    } else {
      throw Error(ErrorKind::Shape, "theta " + to_string(t) + " is unknown to the hypothesis");
    }
  }
  return out;
}

}  // namespace reliabench
