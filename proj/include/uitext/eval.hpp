#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "uitext/backend.hpp"
#include "uitext/hierarchy.hpp"
#include "uitext/prompt.hpp"

namespace uitext {

enum class RuleKind { Regex, NumericRange, NonEmpty, LessThanField, NotEqualField, MemberOfSet };

std::string_view to_string(RuleKind kind);
std::optional<RuleKind> parse_rule_kind(std::string_view s);

struct ValidatorRule {
  RuleKind kind = RuleKind::NonEmpty;
  std::optional<std::string> pattern;
  std::optional<double> min;
  std::optional<double> max;
  std::optional<NodeId> other_widget;
  std::vector<std::string> allowed;
};

struct EvalCase {
  std::string id;
  GuiPage page;
  InputCategory category = InputCategory::Unknown;
  std::vector<std::pair<NodeId, ValidatorRule>> rules;  // several rules may share a widget
};

struct CaseOutcome {
  std::string id;
  InputCategory category = InputCategory::Unknown;
  bool passed = false;
  int attempts_used = 0;
  std::map<NodeId, std::string> inputs;  // values of the last attempt
  std::string error;                     // last failure reason, empty when passed
};

struct EvalReport {
  std::vector<CaseOutcome> per_case;  // sorted by case id
  std::map<InputCategory, double> per_category;
  std::optional<double> overall;  // absent for an empty suite
  int attempts = 3;
  BackendKind backend = BackendKind::Mock;

  std::size_t passed_count() const;
};

struct EvalOptions {
  int attempts = 3;
  PromptOptions prompt = default_prompt_options();
};

// Checks one generated value. Cross-field rules read `siblings`; a missing
// reference throws Error{RuleError}.
bool validate(std::string_view input, const ValidatorRule& rule, const std::map<NodeId, std::string>& siblings);

// Parses a case file {page_file, category, rules:[{widget, kind, ...}]}; the
// page path is relative to the case file. Throws Error{MalformedInput}.
EvalCase load_eval_case(const std::string& path);

// Every *.json case file directly under `dir`, sorted by id.
std::vector<EvalCase> load_eval_cases(const std::string& dir);

// Generates, fills and validates every case; a case passes when all of its
// widgets validate in at least one attempt. Cases run in parallel.
EvalReport run_eval(std::span<const EvalCase> cases, const BackendConfig& cfg, const EvalOptions& options = {});

// Single-threaded reference for run_eval.
EvalReport run_eval_serial(std::span<const EvalCase> cases, const BackendConfig& cfg, const EvalOptions& options = {});

nlohmann::ordered_json report_to_json(const EvalReport& report);
std::string summary_table(const EvalReport& report);

}  // namespace uitext
