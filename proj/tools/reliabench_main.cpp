// reliabench: batch front end over problem documents.
//
// Exit codes: 0 = ran (verdicts are in the report), 2 = invalid input,
// 3 = enumeration/sample-space budget refused.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reliabench/errors.hpp"
#include "reliabench/problem.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;

struct Common {
  std::string document;
  std::string alpha;
  std::string out;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("document", common.document, "Problem document (JSON)")->required();
  cmd->add_option("--alpha", common.alpha, "Override the document's level, e.g. 1/20");
  cmd->add_option("--out", common.out, "Write the output here instead of stdout");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw reliabench::Error(reliabench::ErrorKind::Validation, "cannot write \"" + path + "\"");
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace reliabench;
  CLI::App app{"Exact-arithmetic workbench for frequentist tests and estimators over finite parameter spaces"};
  app.require_subcommand(1);

  Common common;
  std::string test_id;
  std::vector<std::string> test_ids;
  std::vector<std::string> estimator_ids;
  std::vector<std::string> interval_ids;
  std::string mode = "hierarchy";
  bool certify = false;
  std::uint64_t max_enumeration = EnumerationBudget{}.max_tests;

  auto* evaluate = app.add_subcommand("evaluate", "Power function, size, level and unbiasedness of a declared test");
  add_common(evaluate, common);
  evaluate->add_option("--test", test_id, "Test id")->required();

  auto* decide = app.add_subcommand("decide", "Decide UMP / UMPU existence or the highest achievable standard");
  add_common(decide, common);
  decide->add_option("--mode", mode, "ump, umpu or hierarchy")
      ->check(CLI::IsMember({"ump", "umpu", "hierarchy"}));
  decide->add_flag("--certify", certify, "Cross-check the envelope against every deterministic test");
  decide->add_option("--max-enumeration", max_enumeration, "Largest number of deterministic tests to enumerate");

  auto* justify_cmd = app.add_subcommand("justify", "Achievabilist verdict for a declared test");
  add_common(justify_cmd, common);
  justify_cmd->add_option("--test", test_id, "Test id")->required();

  auto* table = app.add_subcommand("power-table", "CSV power table over the parameter space");
  add_common(table, common);
  table->add_option("--test", test_ids, "Test id (repeatable)")->required();

  auto* estimate = app.add_subcommand("estimate", "MSE, bias, domination, admissibility, UMVU and coverage");
  add_common(estimate, common);
  estimate->add_option("--estimator", estimator_ids, "Estimator id (repeatable; default: all declared)");
  estimate->add_option("--interval", interval_ids, "Interval estimator id (repeatable; default: all declared)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    std::optional<Rational> alpha;
    if (!common.alpha.empty()) alpha = parse_rational(common.alpha);
    auto doc = load_problem(common.document, alpha);

    if (table->parsed()) {
      emit(power_table_csv(doc, test_ids), common.out);
      return 0;
    }

    nlohmann::json report;
    if (evaluate->parsed()) {
      report = evaluate_report(doc, test_id);
    } else if (decide->parsed()) {
      DecideOptions options;
      options.mode = mode == "ump" ? DecideMode::Ump : mode == "umpu" ? DecideMode::Umpu : DecideMode::Hierarchy;
      options.certify = certify;
      options.budget.max_tests = max_enumeration;
      report = decide_report(doc, options);
    } else if (justify_cmd->parsed()) {
      report = justify_report(doc, test_id);
    } else {
      report = estimate_report(doc, estimator_ids, interval_ids);
    }
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
    report["timing"] = {{"elapsed_ms", elapsed.count()}};
    emit(report.dump(2) + "\n", common.out);
    return 0;
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return e.kind() == ErrorKind::Budget ? kExitBudget : kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
