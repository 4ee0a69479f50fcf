#include "reliabench/hierarchy.hpp"

#include "reliabench/errors.hpp"

namespace reliabench {

ProblemContext::ProblemContext(ParameterSpace space_in, Hypothesis hyp_in, Rational alpha_in)
    : space(std::move(space_in)), hyp(std::move(hyp_in)), alpha(std::move(alpha_in)) {
  if (!in_unit_interval(alpha)) throw Error(ErrorKind::Domain, "alpha " + to_string(alpha) + " is outside [0,1]");
  hyp.partition(space);
}

std::string to_string(RungKind kind) {
  switch (kind) {
    case RungKind::Level: return "Level";
    case RungKind::UmpUnbiased: return "UmpUnbiased";
    case RungKind::Ump: return "Ump";
    case RungKind::Custom: return "Custom";
  }
  return "Custom";
}

std::string StandardRung::label() const { return name + "(" + to_string(alpha) + ")"; }

namespace {

RungCheck check_level(const Test& test, const ProblemContext& ctx) {
  RungCheck out;
  auto part = ctx.hyp.partition(ctx.space);
  for (auto j : part.null_indices) {
    const auto& world = ctx.space.world(j);
    auto p = rejection_probability(test, world);
    if (p > ctx.alpha) {
      out.meets = false;
      out.failures.push_back({"Level", "rejection probability above alpha at a null world", world.theta(), p, ctx.alpha});
    }
  }
  return out;
}

RungCheck check_envelope(const Test& test, const ProblemContext& ctx, ConstraintSet constraints,
                         const std::string& rung) {
  RungCheck out = check_level(test, ctx);
  for (auto& f : out.failures) f.rung = rung;
  if (constraints == ConstraintSet::LevelUnbiased) {
    auto unbiased = check_unbiased(test, ctx.hyp, ctx.space);
    if (!unbiased.unbiased) {
      out.meets = false;
      out.failures.push_back({rung, "power at an alternative is below power at a null world", unbiased.alt_theta,
                              rejection_probability(test, ctx.space.at(*unbiased.alt_theta)),
                              rejection_probability(test, ctx.space.at(*unbiased.null_theta))});
    }
  }
  if (ctx.degenerate()) return out;
  auto envelope = power_envelope(ctx.space, ctx.hyp, ctx.alpha, constraints);
  if (!envelope.feasible()) {
    out.meets = false;
    out.failures.push_back({rung, "constraint set is infeasible", std::nullopt, std::nullopt, std::nullopt});
    return out;
  }
  for (std::size_t i = 0; i < envelope.thetas.size(); ++i) {
    auto p = rejection_probability(test, ctx.space.at(envelope.thetas[i]));
    if (p != envelope.values[i]) {
      out.meets = false;
      out.failures.push_back({rung, "power falls short of the envelope", envelope.thetas[i], p, envelope.values[i]});
    }
  }
  return out;
}

Achievement achieve_level(const ProblemContext& ctx) {
  Achievement a;
  a.achieved = true;
  a.witness = Test::never_reject(ctx.space.sample_space());
  return a;
}

Achievement achieve_ump(const ProblemContext& ctx, ConstraintSet constraints) {
  Achievement a;
  if (ctx.degenerate()) {
    a.applicable = false;
    a.note = "no alternative worlds: uniform-power standards are vacuous";
    return a;
  }
  auto decision = decide_ump(ctx.space, ctx.hyp, ctx.alpha, constraints);
  a.achieved = decision.exists;
  a.witness = decision.witness;
  if (decision.infeasible) a.note = "constraint set is infeasible";
  a.decision = std::move(decision);
  return a;
}

RungDefinition level_rung() {
  return {RungKind::Level, "Level", achieve_level, check_level};
}

RungDefinition umpu_rung() {
  return {RungKind::UmpUnbiased, "UmpUnbiased",
          [](const ProblemContext& ctx) { return achieve_ump(ctx, ConstraintSet::LevelUnbiased); },
          [](const Test& t, const ProblemContext& ctx) {
            return check_envelope(t, ctx, ConstraintSet::LevelUnbiased, "UmpUnbiased");
          }};
}

RungDefinition ump_rung() {
  return {RungKind::Ump, "Ump", [](const ProblemContext& ctx) { return achieve_ump(ctx, ConstraintSet::LevelOnly); },
          [](const Test& t, const ProblemContext& ctx) {
            return check_envelope(t, ctx, ConstraintSet::LevelOnly, "Ump");
          }};
}

}  // namespace

Ladder::Ladder(std::vector<RungDefinition> ascending) : rungs_(std::move(ascending)) {
  if (rungs_.empty()) throw Error(ErrorKind::Validation, "a ladder needs at least one rung");
}

Ladder Ladder::standard() { return Ladder({level_rung(), umpu_rung(), ump_rung()}); }

void Ladder::register_rung(RungDefinition rung) {
  if (!rung.achieve || !rung.check) throw Error(ErrorKind::Validation, "rung \"" + rung.name + "\" is incomplete");
  rungs_.push_back(std::move(rung));
}

const RungDefinition& Ladder::find(RungKind kind) const {
  for (const auto& r : rungs_) {
    if (r.kind == kind) return r;
  }
  throw Error(ErrorKind::Unsupported, "ladder has no rung of kind " + to_string(kind));
}

Achievement achievable(RungKind rung, const ProblemContext& ctx) {
  return Ladder::standard().find(rung).achieve(ctx);
}

Achievement achievable(const StandardRung& rung, const ProblemContext& ctx) {
  if (rung.alpha == ctx.alpha) return achievable(rung.kind, ctx);
  ProblemContext at_level(ctx.space, ctx.hyp, rung.alpha);
  return achievable(rung.kind, at_level);
}

HighestRung highest_achievable(const ProblemContext& ctx, const Ladder& ladder) {
  std::vector<std::pair<StandardRung, Achievement>> above;
  const auto& rungs = ladder.rungs();
  for (auto it = rungs.rbegin(); it != rungs.rend(); ++it) {
    StandardRung rung{it->kind, ctx.alpha, it->name};
    auto result = it->achieve(ctx);
    if (result.achieved && result.witness) {
      return HighestRung{rung, *result.witness, ctx.degenerate(), std::move(above)};
    }
    above.emplace_back(rung, std::move(result));
  }
  throw Error(ErrorKind::Context, "no rung of the ladder is achievable in this context");
}

JustificationReport justify(const Test& test, const ProblemContext& ctx, const Ladder& ladder) {
  if (!(test.space() == ctx.space.sample_space())) {
    throw Error(ErrorKind::Shape, "test is defined over a different sample space than the context");
  }
  auto highest = highest_achievable(ctx, ladder);
  JustificationReport report{highest.rung, highest.witness, false, highest.degenerate, {}, {}};
  const RungDefinition* definition = nullptr;
  for (const auto& r : ladder.rungs()) {
    if (r.name == highest.rung.name) definition = &r;
  }
  auto check = definition->check(test, ctx);
  report.justified = check.meets;
  report.explanations = std::move(check.failures);
  report.unachievable_above = std::move(highest.unachievable_above);
  return report;
}

}  // namespace reliabench
