#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "reliabench/construct.hpp"
#include "reliabench/rational.hpp"
#include "reliabench/testkit.hpp"
#include "reliabench/worlds.hpp"

namespace reliabench {

/// A hypothesis to test, the worlds considered possible, and the level.
struct ProblemContext {
  ParameterSpace space;
  Hypothesis hyp;
  Rational alpha;

  ProblemContext(ParameterSpace space, Hypothesis hyp, Rational alpha);

  int sample_size() const noexcept { return space.sample_space().length(); }
  /// No alternative worlds.
  bool degenerate() const noexcept { return hyp.alt_thetas().empty(); }
};

enum class RungKind { Level, UmpUnbiased, Ump, Custom };

struct StandardRung {
  RungKind kind = RungKind::Level;
  Rational alpha;
  std::string name;

  /// "Level(1/16)", "UmpUnbiased(1/16)", ...
  std::string label() const;
};

/// One reason a test misses a rung.
struct Explanation {
  std::string rung;
  std::string reason;
  std::optional<Rational> theta;
  std::optional<Rational> observed;
  std::optional<Rational> required;
};

struct Achievement {
  bool achieved = false;
  /// False for rungs that are vacuous in a degenerate context.
  bool applicable = true;
  std::optional<Test> witness;
  std::optional<UmpDecision> decision;
  std::string note;
};

struct RungCheck {
  bool meets = true;
  std::vector<Explanation> failures;
};

/// A reliability standard: how to decide whether some test meets it in a
/// context, and whether a given test meets it.
struct RungDefinition {
  RungKind kind = RungKind::Custom;
  std::string name;
  std::function<Achievement(const ProblemContext&)> achieve;
  std::function<RungCheck(const Test&, const ProblemContext&)> check;
};

/// Standards ordered from the minimum qualification upward. The bottom rung
/// must be achievable in every context.
class Ladder {
 public:
  /// Level < UmpUnbiased < Ump.
  static Ladder standard();

  explicit Ladder(std::vector<RungDefinition> ascending);

  const std::vector<RungDefinition>& rungs() const noexcept { return rungs_; }
  /// Adds a rung above all existing ones.
  void register_rung(RungDefinition rung);
  const RungDefinition& find(RungKind kind) const;

 private:
  std::vector<RungDefinition> rungs_;
};

Achievement achievable(RungKind rung, const ProblemContext& ctx);
Achievement achievable(const StandardRung& rung, const ProblemContext& ctx);

struct HighestRung {
  StandardRung rung;
  Test witness;
  bool degenerate = false;
  /// Verdicts of the rungs scanned above the returned one, top first.
  std::vector<std::pair<StandardRung, Achievement>> unachievable_above;
};

HighestRung highest_achievable(const ProblemContext& ctx, const Ladder& ladder = Ladder::standard());

/// "Justified" means the test meets the highest achievable rung, the
/// necessary condition of the achievabilist norm.
struct JustificationReport {
  StandardRung highest_rung;
  Test witness;
  bool justified = false;
  bool degenerate = false;
  std::vector<Explanation> explanations;
  std::vector<std::pair<StandardRung, Achievement>> unachievable_above;
};

JustificationReport justify(const Test& test, const ProblemContext& ctx, const Ladder& ladder = Ladder::standard());

std::string to_string(RungKind kind);

}  // namespace reliabench
