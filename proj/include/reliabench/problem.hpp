#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "reliabench/estimation.hpp"
#include "reliabench/hierarchy.hpp"
#include "reliabench/oracle.hpp"
#include "reliabench/testkit.hpp"

namespace reliabench {

/// A parsed problem document: the context plus any declared tests,
/// estimators and interval estimators, keyed by their ids.
struct ProblemDocument {
  ProblemContext context;
  std::map<std::string, Test> tests;
  std::map<std::string, Estimator> estimators;
  std::map<std::string, IntervalEstimator> intervals;
  std::optional<std::map<Rational, Rational>> estimand_table;
  /// Canonical model section; re-parsing it rebuilds the same worlds.
  nlohmann::json model_echo;

  Estimand estimand() const;
  const Test& test(const std::string& id) const;
  const Estimator& estimator(const std::string& id) const;
};

/// Throws ErrorKind::Validation listing every defect found, each prefixed
/// with its location in the document (e.g. "tests.k0: ...").
ProblemDocument parse_problem(const nlohmann::json& document, const std::optional<Rational>& alpha_override = {});
ProblemDocument load_problem(const std::string& path, const std::optional<Rational>& alpha_override = {});

nlohmann::json test_to_json(const Test& test);
nlohmann::json power_to_json(const PowerFunction& power);

/// Canonical document holding the context and the named declarations.
nlohmann::json context_echo(const ProblemDocument& doc, const std::vector<std::string>& test_ids = {},
                            const std::vector<std::string>& estimator_ids = {},
                            const std::vector<std::string>& interval_ids = {});

enum class DecideMode { Ump, Umpu, Hierarchy };

struct DecideOptions {
  DecideMode mode = DecideMode::Hierarchy;
  bool certify = false;
  EnumerationBudget budget;
};

nlohmann::json evaluate_report(const ProblemDocument& doc, const std::string& test_id);
nlohmann::json decide_report(const ProblemDocument& doc, const DecideOptions& options);
nlohmann::json justify_report(const ProblemDocument& doc, const std::string& test_id);
nlohmann::json estimate_report(const ProblemDocument& doc, std::vector<std::string> estimator_ids,
                               std::vector<std::string> interval_ids);

/// CSV: theta, theta_decimal, then an exact and a decimal column per test.
std::string power_table_csv(const ProblemDocument& doc, const std::vector<std::string>& test_ids);

}  // namespace reliabench
