#include "reliabench/problem.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "reliabench/errors.hpp"

namespace reliabench {

using nlohmann::json;

namespace {

class Diagnostics {
 public:
  void add(const std::string& where, const std::string& what) { items_.push_back(where + ": " + what); }
  bool empty() const { return items_.empty(); }

  // Runs `step`, recording any library error under `where`.
  template <class F>
  bool attempt(const std::string& where, F&& step) {
    try {
      step();
      return true;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Budget) throw;
      add(where, e.what());
    } catch (const json::exception& e) {
      add(where, e.what());
    }
    return false;
  }

  [[noreturn]] void raise() const {
    std::string message = "invalid problem document";
    for (const auto& item : items_) message += "\n  - " + item;
    throw Error(ErrorKind::Validation, message);
  }

 private:
  std::vector<std::string> items_;
};

[[noreturn]] void invalid(const std::string& message) { throw Error(ErrorKind::Validation, message); }

Rational rational_from(const json& value) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(mpz_class(std::to_string(value.get<long long>())));
  if (value.is_number_unsigned()) return Rational(mpz_class(std::to_string(value.get<unsigned long long>())));
  invalid("expected a rational written as a string such as \"1/16\", got " + value.dump());
}

int int_from(const json& value, const std::string& name) {
  if (!value.is_number_integer()) invalid(name + " must be an integer");
  return value.get<int>();
}

json rational_list(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

struct ParsedModel {
  ParameterSpace space;
  json echo;
};

ParsedModel parse_model(const json& model) {
  if (!model.is_object()) invalid("model must be an object");
  const std::string alphabet = model.value("alphabet", std::string("RN"));
  if (!model.contains("n")) invalid("model.n (sample size) is required");
  const int n = int_from(model.at("n"), "model.n");
  SampleSpace sample(alphabet, n);

  auto bernoulli = [&](const std::vector<Rational>& thetas) {
    if (alphabet.size() != 2) invalid("theta grids describe two-symbol (Bernoulli) models; use model.worlds otherwise");
    std::vector<World> worlds;
    for (const auto& t : thetas) {
      if (!in_unit_interval(t)) invalid("theta " + to_string(t) + " is outside [0,1]");
      std::vector<Rational> per_draw{t, Rational(1) - t};
      worlds.push_back(build_iid(t, sample, per_draw));
    }
    json echo{{"alphabet", alphabet}, {"n", n}, {"thetas", rational_list(thetas)}};
    return ParsedModel{ParameterSpace(std::move(worlds)), echo};
  };

  int forms = static_cast<int>(model.contains("thetas")) + static_cast<int>(model.contains("simple_grid")) +
              static_cast<int>(model.contains("compound_grid")) + static_cast<int>(model.contains("worlds"));
  if (forms != 1) invalid("model needs exactly one of thetas, simple_grid, compound_grid, worlds");

  if (model.contains("thetas")) {
    std::vector<Rational> thetas;
    for (const auto& t : model.at("thetas")) thetas.push_back(rational_from(t));
    return bernoulli(thetas);
  }
  if (model.contains("simple_grid")) {
    const int marbles = int_from(model.at("simple_grid").at("marbles"), "model.simple_grid.marbles");
    auto grid = make_simple_grid(marbles, 1);
    return bernoulli(grid.thetas());
  }
  if (model.contains("compound_grid")) {
    const auto& g = model.at("compound_grid");
    auto grid = make_compound_grid(int_from(g.at("b_min"), "b_min"), int_from(g.at("b_max"), "b_max"), 1);
    return bernoulli(grid.thetas());
  }

  std::vector<World> worlds;
  json echo_worlds = json::array();
  const auto& list = model.at("worlds");
  if (!list.is_array() || list.empty()) invalid("model.worlds must be a nonempty array");
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto& w = list[i];
    const std::string where = "model.worlds[" + std::to_string(i) + "]";
    if (!w.contains("theta")) invalid(where + ".theta is required");
    Rational theta = rational_from(w.at("theta"));
    if (w.contains("per_draw")) {
      std::vector<Rational> per_draw;
      for (const auto& p : w.at("per_draw")) per_draw.push_back(rational_from(p));
      worlds.push_back(build_iid(theta, sample, per_draw));
    } else if (w.contains("dist")) {
      std::map<std::string, Rational> dist;
      for (const auto& [sequence, p] : w.at("dist").items()) dist[sequence] = rational_from(p);
      worlds.push_back(make_explicit_world(theta, sample, dist));
    } else {
      invalid(where + " needs per_draw or dist");
    }
    json dist = json::object();
    for (std::size_t x = 0; x < sample.size(); ++x) {
      if (sgn(worlds.back().probability(x)) != 0) dist[sample.sequence(x)] = to_string(worlds.back().probability(x));
    }
    echo_worlds.push_back({{"theta", to_string(theta)}, {"dist", dist}});
  }
  json echo{{"alphabet", alphabet}, {"n", n}, {"worlds", echo_worlds}};
  return ParsedModel{ParameterSpace(std::move(worlds)), echo};
}

Hypothesis parse_hypothesis(const json& hyp, const ParameterSpace& space) {
  if (!hyp.is_object() || !hyp.contains("null")) invalid("hypothesis.null is required");
  const auto& null = hyp.at("null");
  if (!null.is_object() || null.size() != 1) {
    invalid("hypothesis.null needs exactly one of at_least, at_most, point, interval, thetas");
  }
  if (null.contains("at_least")) return Hypothesis::at_least(space, rational_from(null.at("at_least")));
  if (null.contains("at_most")) return Hypothesis::at_most(space, rational_from(null.at("at_most")));
  if (null.contains("point")) return Hypothesis::point(space, rational_from(null.at("point")));
  if (null.contains("interval")) {
    const auto& iv = null.at("interval");
    if (!iv.is_array() || iv.size() != 2) invalid("hypothesis.null.interval must be [lo, hi]");
    return Hypothesis::interval(space, rational_from(iv[0]), rational_from(iv[1]));
  }
  if (null.contains("thetas")) {
    std::vector<Rational> thetas;
    for (const auto& t : null.at("thetas")) thetas.push_back(rational_from(t));
    return Hypothesis(space, std::move(thetas));
  }
  invalid("unknown hypothesis form " + null.dump());
}

// Values keyed by Red count ("count") or by sequence ("phi"/"values"),
// with an optional "default"; a bare object is a total sequence mapping.
template <class Value, class Convert>
std::vector<Value> parse_mapping(const json& decl, const SampleSpace& space, Convert convert,
                                 const char* sequence_key) {
  std::vector<std::optional<Value>> values(space.size());
  std::optional<Value> fallback;
  if (decl.is_object() && decl.contains("default")) fallback = convert(decl.at("default"));
  if (decl.is_object() && decl.contains("count")) {
    std::map<int, Value> by_count;
    for (const auto& [key, value] : decl.at("count").items()) {
      int k = 0;
      try {
        std::size_t used = 0;
        k = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        invalid("count key \"" + key + "\" is not an integer");
      }
      if (k < 0 || k > space.length()) invalid("count " + key + " is outside 0.." + std::to_string(space.length()));
      by_count.emplace(k, convert(value));
    }
    for (std::size_t x = 0; x < space.size(); ++x) {
      auto it = by_count.find(space.red_count(x));
      if (it != by_count.end()) values[x] = it->second;
    }
  } else {
    const json& table = decl.is_object() && decl.contains(sequence_key) ? decl.at(sequence_key) : decl;
    if (!table.is_object()) invalid("expected an object mapping sequences to values");
    for (const auto& [sequence, value] : table.items()) {
      if (&table == &decl && sequence == "default") continue;
      values[space.index_of(sequence)] = convert(value);
    }
  }
  std::vector<Value> out;
  out.reserve(values.size());
  for (std::size_t x = 0; x < values.size(); ++x) {
    if (values[x]) {
      out.push_back(*values[x]);
    } else if (fallback) {
      out.push_back(*fallback);
    } else {
      invalid("no value for sequence " + space.sequence(x) + " (declare it or give a \"default\")");
    }
  }
  return out;
}

Test parse_test(const json& decl, const SampleSpace& space) {
  if (decl.is_string()) {
    const auto name = decl.get<std::string>();
    if (name == "never-reject") return Test::never_reject(space);
    if (name == "always-reject") return Test::always_reject(space);
    invalid("unknown named test \"" + name + "\"");
  }
  return Test(space, parse_mapping<Rational>(decl, space, rational_from, "phi"));
}

Estimator parse_estimator(const json& decl, const SampleSpace& space) {
  if (decl.is_object() && decl.contains("constant")) return Estimator::constant(space, rational_from(decl.at("constant")));
  if (decl.is_string() && decl.get<std::string>() == "sample-proportion") return Estimator::sample_proportion(space);
  return Estimator(space, parse_mapping<Rational>(decl, space, rational_from, "values"));
}

Interval interval_from(const json& value) {
  if (!value.is_array() || value.size() != 2) invalid("interval must be [lo, hi]");
  return Interval{rational_from(value[0]), rational_from(value[1])};
}

IntervalEstimator parse_interval(const json& decl, const SampleSpace& space) {
  return IntervalEstimator(space, parse_mapping<Interval>(decl, space, interval_from, "values"));
}

// An optional section of named declarations; anything but an object is reported.
json declarations(const json& document, const char* name, Diagnostics& diag) {
  if (!document.contains(name)) return json::object();
  if (!document.at(name).is_object()) {
    diag.add(name, "must be an object keyed by id");
    return json::object();
  }
  return document.at(name);
}

json entry(const Rational& theta, const Rational& value) {
  return json{{"theta", to_string(theta)}, {"value", to_string(value)}, {"decimal", to_decimal(value)}};
}

json envelope_to_json(const PowerEnvelope& env) {
  json out = json::array();
  for (std::size_t i = 0; i < env.thetas.size(); ++i) out.push_back(entry(env.thetas[i], env.values[i]));
  return out;
}

json certificate_to_json(const NonExistenceCertificate& cert) {
  return json{{"theta_a", to_string(cert.theta_a)},
              {"anchored", rational_list(cert.anchored)},
              {"theta_b", to_string(cert.theta_b)},
              {"constrained_max", to_string(cert.constrained_max)},
              {"envelope_b", to_string(cert.envelope_b)}};
}

json decision_to_json(const UmpDecision& d, const ParameterSpace& space) {
  json out;
  out["verdict"] = d.infeasible ? "Infeasible" : d.exists ? "Exists" : "NotExists";
  out["envelope"] = envelope_to_json(d.envelope);
  if (d.witness) {
    out["witness"] = test_to_json(*d.witness);
    out["witness_power"] = power_to_json(power_function(*d.witness, space));
  }
  if (d.certificate) out["certificate"] = certificate_to_json(*d.certificate);
  return out;
}

json explanation_to_json(const Explanation& e) {
  json out{{"rung", e.rung}, {"reason", e.reason}};
  if (e.theta) out["theta"] = to_string(*e.theta);
  if (e.observed) out["observed"] = to_string(*e.observed);
  if (e.required) out["required"] = to_string(*e.required);
  return out;
}

json unachievable_to_json(const std::vector<std::pair<StandardRung, Achievement>>& above, const ParameterSpace& space) {
  json out = json::array();
  for (const auto& [rung, result] : above) {
    json item{{"rung", rung.label()}, {"applicable", result.applicable}};
    if (!result.note.empty()) item["note"] = result.note;
    if (result.decision) item["decision"] = decision_to_json(*result.decision, space);
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace

Estimand ProblemDocument::estimand() const {
  return estimand_table ? Estimand::table(*estimand_table) : Estimand::identity();
}

const Test& ProblemDocument::test(const std::string& id) const {
  auto it = tests.find(id);
  if (it == tests.end()) throw Error(ErrorKind::Validation, "tests." + id + " is not declared in the document");
  return it->second;
}

const Estimator& ProblemDocument::estimator(const std::string& id) const {
  auto it = estimators.find(id);
  if (it == estimators.end()) throw Error(ErrorKind::Validation, "estimators." + id + " is not declared in the document");
  return it->second;
}

ProblemDocument parse_problem(const json& document, const std::optional<Rational>& alpha_override) {
  Diagnostics diag;
  if (!document.is_object()) {
    diag.add("document", "top level must be a JSON object");
    diag.raise();
  }
  std::optional<ParsedModel> model;
  diag.attempt("model", [&] {
    if (!document.contains("model")) invalid("section is required");
    model = parse_model(document.at("model"));
  });

  std::optional<Rational> alpha = alpha_override;
  if (!alpha) {
    diag.attempt("alpha", [&] {
      if (!document.contains("alpha")) invalid("level alpha is required (or pass --alpha)");
      alpha = rational_from(document.at("alpha"));
    });
  }
  if (alpha && !in_unit_interval(*alpha)) {
    diag.add("alpha", to_string(*alpha) + " is outside [0,1]");
    alpha.reset();
  }
  if (!model) diag.raise();

  std::optional<Hypothesis> hyp;
  diag.attempt("hypothesis", [&] {
    if (!document.contains("hypothesis")) invalid("section is required");
    hyp = parse_hypothesis(document.at("hypothesis"), model->space);
  });

  const auto& sample = model->space.sample_space();
  std::map<std::string, Test> tests;
  const json tests_section = declarations(document, "tests", diag);
  for (const auto& [id, decl] : tests_section.items()) {
    diag.attempt("tests." + id, [&] { tests.emplace(id, parse_test(decl, sample)); });
  }
  std::map<std::string, Estimator> estimators;
  const json estimators_section = declarations(document, "estimators", diag);
  for (const auto& [id, decl] : estimators_section.items()) {
    diag.attempt("estimators." + id, [&] { estimators.emplace(id, parse_estimator(decl, sample)); });
  }
  std::map<std::string, IntervalEstimator> intervals;
  const json intervals_section = declarations(document, "intervals", diag);
  for (const auto& [id, decl] : intervals_section.items()) {
    diag.attempt("intervals." + id, [&] { intervals.emplace(id, parse_interval(decl, sample)); });
  }
  std::optional<std::map<Rational, Rational>> estimand;
  if (document.contains("estimand")) {
    diag.attempt("estimand", [&] {
      const auto& e = document.at("estimand");
      if (e.is_string() && e.get<std::string>() == "identity") return;
      if (!e.is_object() || !e.contains("table")) invalid("estimand must be \"identity\" or {\"table\": {...}}");
      std::map<Rational, Rational> table;
      for (const auto& [theta, value] : e.at("table").items()) table[parse_rational(theta)] = rational_from(value);
      for (const auto& t : model->space.thetas()) {
        if (!table.contains(t)) invalid("table has no value for theta " + to_string(t));
      }
      estimand = std::move(table);
    });
  }

  if (!diag.empty() || !hyp || !alpha) diag.raise();
  return ProblemDocument{ProblemContext(std::move(model->space), std::move(*hyp), *alpha),
                         std::move(tests),
                         std::move(estimators),
                         std::move(intervals),
                         std::move(estimand),
                         std::move(model->echo)};
}

ProblemDocument load_problem(const std::string& path, const std::optional<Rational>& alpha_override) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Validation, "cannot open problem document \"" + path + "\"");
  json document;
  try {
    document = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Validation, "problem document \"" + path + "\" is not valid JSON: " + e.what());
  }
  return parse_problem(document, alpha_override);
}

json test_to_json(const Test& test) {
  json out = json::object();
  for (std::size_t x = 0; x < test.space().size(); ++x) out[test.space().sequence(x)] = to_string(test.phi(x));
  return out;
}

json power_to_json(const PowerFunction& power) {
  json out = json::array();
  for (std::size_t i = 0; i < power.size(); ++i) out.push_back(entry(power.thetas()[i], power.values()[i]));
  return out;
}

json context_echo(const ProblemDocument& doc, const std::vector<std::string>& test_ids,
                  const std::vector<std::string>& estimator_ids, const std::vector<std::string>& interval_ids) {
  json out;
  out["model"] = doc.model_echo;
  out["hypothesis"] = {{"null", {{"thetas", rational_list(doc.context.hyp.null_thetas())}}}};
  out["alpha"] = to_string(doc.context.alpha);
  if (!test_ids.empty()) {
    json tests = json::object();
    for (const auto& id : test_ids) tests[id] = test_to_json(doc.test(id));
    out["tests"] = tests;
  }
  if (!estimator_ids.empty()) {
    json estimators = json::object();
    for (const auto& id : estimator_ids) {
      const auto& e = doc.estimator(id);
      json values = json::object();
      for (std::size_t x = 0; x < e.space().size(); ++x) values[e.space().sequence(x)] = to_string(e.value(x));
      estimators[id] = {{"values", values}};
    }
    out["estimators"] = estimators;
  }
  if (!interval_ids.empty()) {
    json intervals = json::object();
    for (const auto& id : interval_ids) {
      const auto& ie = doc.intervals.at(id);
      json values = json::object();
      for (std::size_t x = 0; x < ie.space().size(); ++x) {
        values[ie.space().sequence(x)] = {to_string(ie.interval(x).lo), to_string(ie.interval(x).hi)};
      }
      intervals[id] = {{"values", values}};
    }
    out["intervals"] = intervals;
  }
  if (doc.estimand_table) {
    json table = json::object();
    for (const auto& [theta, value] : *doc.estimand_table) table[to_string(theta)] = to_string(value);
    out["estimand"] = {{"table", table}};
  }
  return out;
}

json evaluate_report(const ProblemDocument& doc, const std::string& test_id) {
  const auto& ctx = doc.context;
  const auto& test = doc.test(test_id);
  auto power = power_function(test, ctx.space);
  auto test_size = size(test, ctx.hyp, ctx.space);
  auto unbiased = check_unbiased(test, ctx.hyp, ctx.space);
  json report;
  report["command"] = "evaluate";
  report["context"] = context_echo(doc, {test_id});
  report["test"] = test_id;
  report["power"] = power_to_json(power);
  report["size"] = to_string(test_size);
  report["size_decimal"] = to_decimal(test_size);
  report["level"] = {{"alpha", to_string(ctx.alpha)}, {"pass", test_size <= ctx.alpha}};
  report["unbiased"] = unbiased.unbiased;
  if (unbiased.vacuous) report["flags"] = json::array({"no-alternatives: unbiasedness holds vacuously"});
  if (!unbiased.unbiased) {
    report["unbiased_violation"] = {{"alt_theta", to_string(*unbiased.alt_theta)},
                                    {"null_theta", to_string(*unbiased.null_theta)}};
  }
  return report;
}

json decide_report(const ProblemDocument& doc, const DecideOptions& options) {
  const auto& ctx = doc.context;
  json report;
  report["command"] = "decide";
  report["context"] = context_echo(doc);
  report["alpha"] = to_string(ctx.alpha);
  json flags = json::array();
  if (ctx.degenerate()) flags.push_back("degenerate: no alternative worlds, uniform-power rungs are vacuous");

  std::optional<PowerEnvelope> level_envelope;
  if (options.mode == DecideMode::Hierarchy) {
    report["mode"] = "hierarchy";
    auto highest = highest_achievable(ctx);
    report["highest_rung"] = highest.rung.label();
    report["rung_kind"] = to_string(highest.rung.kind);
    report["witness"] = test_to_json(highest.witness);
    report["witness_power"] = power_to_json(power_function(highest.witness, ctx.space));
    report["unachievable_above"] = unachievable_to_json(highest.unachievable_above, ctx.space);
    for (const auto& [rung, result] : highest.unachievable_above) {
      if (rung.kind == RungKind::Ump && result.decision) level_envelope = result.decision->envelope;
    }
  } else {
    const bool unbiased = options.mode == DecideMode::Umpu;
    report["mode"] = unbiased ? "umpu" : "ump";
    if (ctx.degenerate()) {
      report["verdict"] = "NotApplicable";
    } else {
      auto decision = unbiased ? decide_umpu(ctx.space, ctx.hyp, ctx.alpha) : decide_ump(ctx.space, ctx.hyp, ctx.alpha);
      report.update(decision_to_json(decision, ctx.space));
      if (!unbiased) level_envelope = decision.envelope;
    }
  }
  report["degenerate"] = ctx.degenerate();
  report["flags"] = flags;

  if (options.certify) {
    if (ctx.degenerate()) {
      report["certification"] = {{"certified", true}, {"vacuous", true}};
    } else {
      if (!level_envelope) level_envelope = power_envelope(ctx.space, ctx.hyp, ctx.alpha, ConstraintSet::LevelOnly);
      auto cert = certify_envelope(*level_envelope, ctx.space, ctx.hyp, ctx.alpha, options.budget);
      json margins = json::array();
      for (std::size_t i = 0; i < cert.thetas.size(); ++i) {
        margins.push_back({{"theta", to_string(cert.thetas[i])},
                           {"margin", to_string(cert.margins[i])},
                           {"deterministic_best", to_string(cert.deterministic_best[i].power)}});
      }
      report["certification"] = {{"certified", cert.certified}, {"vacuous", cert.vacuous}, {"margins", margins}};
      if (cert.violation_theta) report["certification"]["violation_theta"] = to_string(*cert.violation_theta);
    }
  }
  return report;
}

json justify_report(const ProblemDocument& doc, const std::string& test_id) {
  const auto& ctx = doc.context;
  auto result = justify(doc.test(test_id), ctx);
  json report;
  report["command"] = "justify";
  report["context"] = context_echo(doc, {test_id});
  report["test"] = test_id;
  report["verdict"] = result.justified ? "justified" : "not-justified";
  report["highest_rung"] = result.highest_rung.label();
  report["witness"] = test_to_json(result.witness);
  report["degenerate"] = result.degenerate;
  json explanations = json::array();
  for (const auto& e : result.explanations) explanations.push_back(explanation_to_json(e));
  report["explanations"] = explanations;
  report["unachievable_above"] = unachievable_to_json(result.unachievable_above, ctx.space);
  report["note"] = "justified = meets the highest achievable standard (a necessary condition, not a sufficient one)";
  return report;
}

json estimate_report(const ProblemDocument& doc, std::vector<std::string> estimator_ids,
                     std::vector<std::string> interval_ids) {
  const auto& space = doc.context.space;
  const auto g = doc.estimand();
  if (estimator_ids.empty()) {
    for (const auto& [id, e] : doc.estimators) estimator_ids.push_back(id);
  }
  if (interval_ids.empty()) {
    for (const auto& [id, ie] : doc.intervals) interval_ids.push_back(id);
  }
  for (const auto& id : interval_ids) {
    if (!doc.intervals.contains(id)) throw Error(ErrorKind::Validation, "intervals." + id + " is not declared in the document");
  }
  std::vector<Estimator> cls;
  for (const auto& id : estimator_ids) cls.push_back(doc.estimator(id));

  json report;
  report["command"] = "estimate";
  report["context"] = context_echo(doc, {}, estimator_ids, interval_ids);
  report["class"] = estimator_ids;
  json per = json::array();
  for (std::size_t i = 0; i < cls.size(); ++i) {
    json mse_rows = json::array(), bias_rows = json::array(), var_rows = json::array();
    for (const auto& w : space.worlds()) {
      mse_rows.push_back(entry(w.theta(), mse(cls[i], w, g)));
      bias_rows.push_back(entry(w.theta(), bias(cls[i], w, g)));
      var_rows.push_back(entry(w.theta(), variance(cls[i], w)));
    }
    auto adm = is_admissible_in_class(cls[i], cls, space, g);
    auto umvu = is_umvu_in_class(cls[i], cls, space, g);
    json admissible{{"admissible_within_class", adm.admissible}};
    if (adm.dominated_by) {
      admissible["dominated_by"] = estimator_ids[*adm.dominated_by];
      admissible["strict_at"] = to_string(*adm.strict_at);
    }
    json umvu_json{{"umvu_within_class", umvu.umvu}, {"vacuous", umvu.vacuous}};
    if (!umvu.reason.empty()) umvu_json["reason"] = umvu.reason;
    per.push_back({{"id", estimator_ids[i]},
                   {"mse", mse_rows},
                   {"bias", bias_rows},
                   {"variance", var_rows},
                   {"unbiased", is_unbiased_estimator(cls[i], space, g)},
                   {"admissibility", admissible},
                   {"umvu", umvu_json}});
  }
  report["estimators"] = per;

  // domination[i][j]: estimator i dominates estimator j.
  json matrix = json::array();
  for (const auto& a : cls) {
    json row = json::array();
    for (const auto& b : cls) row.push_back(dominates(a, b, space, g).dominates);
    matrix.push_back(row);
  }
  report["domination"] = matrix;

  json ivs = json::array();
  for (const auto& id : interval_ids) {
    const auto& ie = doc.intervals.at(id);
    json coverage = json::array(), width = json::array();
    for (const auto& w : space.worlds()) {
      coverage.push_back(entry(w.theta(), coverage_probability(ie, w, g)));
      width.push_back(entry(w.theta(), expected_width(ie, w)));
    }
    ivs.push_back({{"id", id}, {"coverage", coverage}, {"expected_width", width}});
  }
  report["intervals"] = ivs;
  return report;
}

std::string power_table_csv(const ProblemDocument& doc, const std::vector<std::string>& test_ids) {
  std::vector<PowerFunction> columns;
  for (const auto& id : test_ids) columns.push_back(power_function(doc.test(id), doc.context.space));
  std::ostringstream out;
  out << "theta,theta_decimal";
  for (const auto& id : test_ids) out << ',' << id << ',' << id << "_decimal";
  out << '\n';
  const auto thetas = doc.context.space.thetas();
  for (std::size_t r = 0; r < thetas.size(); ++r) {
    out << to_string(thetas[r]) << ',' << to_decimal(thetas[r]);
    for (const auto& col : columns) out << ',' << to_string(col.values()[r]) << ',' << to_decimal(col.values()[r]);
    out << '\n';
  }
  return out.str();
}

}  // namespace reliabench
