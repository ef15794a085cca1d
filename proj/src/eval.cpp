#include "uitext/eval.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <regex>
#include <set>

#include "uitext/errors.hpp"
#include "uitext/text_util.hpp"

namespace uitext {

std::string_view to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::Regex: return "regex";
    case RuleKind::NumericRange: return "numeric_range";
    case RuleKind::NonEmpty: return "non_empty";
    case RuleKind::LessThanField: return "less_than_field";
    case RuleKind::NotEqualField: return "not_equal_field";
    case RuleKind::MemberOfSet: return "member_of_set";
  }
  return "non_empty";
}

std::optional<RuleKind> parse_rule_kind(std::string_view s) {
  for (auto k : {RuleKind::Regex, RuleKind::NumericRange, RuleKind::NonEmpty, RuleKind::LessThanField,
                 RuleKind::NotEqualField, RuleKind::MemberOfSet}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

std::size_t EvalReport::passed_count() const {
  return static_cast<std::size_t>(
      std::count_if(per_case.begin(), per_case.end(), [](const CaseOutcome& c) { return c.passed; }));
}

// --- validation ------------------------------------------------------------

namespace {

std::optional<double> parse_number(std::string_view s) {
  const std::string t = text::trim(s);
  if (t.empty()) return std::nullopt;
  double value = 0;
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (*begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

const std::string& sibling(const std::map<NodeId, std::string>& siblings, const ValidatorRule& rule) {
  if (!rule.other_widget) throw Error(ErrorKind::RuleError, "cross-field rule without other_widget");
  auto it = siblings.find(*rule.other_widget);
  if (it == siblings.end()) {
    throw Error(ErrorKind::RuleError, "no value for referenced widget " + std::to_string(*rule.other_widget));
  }
  return it->second;
}

}  // namespace

bool validate(std::string_view input, const ValidatorRule& rule, const std::map<NodeId, std::string>& siblings) {
  switch (rule.kind) {
    case RuleKind::NonEmpty:
      return !text::is_blank(input);
    case RuleKind::Regex: {
      if (!rule.pattern) throw Error(ErrorKind::RuleError, "regex rule without pattern");
      const std::regex re(*rule.pattern);
      return std::regex_match(std::string(input), re);
    }
    case RuleKind::NumericRange: {
      const auto v = parse_number(input);
      if (!v) return false;
      if (rule.min && *v < *rule.min) return false;
      if (rule.max && *v > *rule.max) return false;
      return true;
    }
    case RuleKind::LessThanField: {
      const auto other = parse_number(sibling(siblings, rule));
      const auto v = parse_number(input);
      return v && other && *v < *other;
    }
    case RuleKind::NotEqualField:
      return text::to_lower(text::trim(input)) != text::to_lower(text::trim(sibling(siblings, rule)));
    case RuleKind::MemberOfSet: {
      const std::string v = text::trim(input);
      return std::find(rule.allowed.begin(), rule.allowed.end(), v) != rule.allowed.end();
    }
  }
  return false;
}

// --- case files ------------------------------------------------------------

EvalCase load_eval_case(const std::string& path) {
  namespace fs = std::filesystem;
  using nlohmann::json;
  const std::string bytes = text::read_file(path);
  const json doc = json::parse(bytes, nullptr, false);
  auto malformed = [&](const std::string& why) { return Error(ErrorKind::MalformedInput, path + ": " + why); };
  if (doc.is_discarded() || !doc.is_object()) throw malformed("not a JSON object");
  if (!doc.contains("page_file") || !doc["page_file"].is_string()) throw malformed("missing page_file");

  const fs::path page_path = fs::path(path).parent_path() / doc["page_file"].get<std::string>();
  const std::string id = doc.value("id", fs::path(path).stem().string());
  const auto category = parse_category(doc.value("category", std::string("unknown")));
  if (!category) throw malformed("unknown category");

  EvalCase ec{id, load_page(page_path.string()), *category, {}};
  const auto inputs = find_input_widgets(ec.page);
  const std::set<NodeId> input_set(inputs.begin(), inputs.end());

  for (const auto& r : doc.value("rules", json::array())) {
    if (!r.is_object() || !r.contains("widget") || !r["widget"].is_number_unsigned()) {
      throw malformed("rule needs a non-negative widget id");
    }
    const NodeId widget = r["widget"].get<NodeId>();
    if (!input_set.contains(widget)) throw malformed("rule widget " + std::to_string(widget) + " is not an input widget");
    const auto kind = parse_rule_kind(r.value("kind", std::string{}));
    if (!kind) throw malformed("unknown rule kind " + r.value("kind", std::string{}));

    ValidatorRule rule;
    rule.kind = *kind;
    if (r.contains("pattern")) rule.pattern = r["pattern"].get<std::string>();
    if (r.contains("min")) rule.min = r["min"].get<double>();
    if (r.contains("max")) rule.max = r["max"].get<double>();
    if (r.contains("other_widget")) rule.other_widget = r["other_widget"].get<NodeId>();
    if (r.contains("allowed")) rule.allowed = r["allowed"].get<std::vector<std::string>>();

    if ((rule.kind == RuleKind::LessThanField || rule.kind == RuleKind::NotEqualField) && !rule.other_widget) {
      throw malformed("cross-field rule requires other_widget");
    }
    if (rule.other_widget && !input_set.contains(*rule.other_widget)) {
      throw malformed("other_widget " + std::to_string(*rule.other_widget) + " is not an input widget");
    }
    if (rule.kind == RuleKind::Regex) {
      if (!rule.pattern) throw malformed("regex rule requires pattern");
      try {
        std::regex check(*rule.pattern);
      } catch (const std::regex_error&) {
        throw malformed("invalid regex " + *rule.pattern);
      }
    }
    ec.rules.emplace_back(widget, std::move(rule));
  }
  return ec;
}

std::vector<EvalCase> load_eval_cases(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code err;
  if (!fs::is_directory(dir, err)) throw Error(ErrorKind::IoError, "not a directory: " + dir);
  std::vector<EvalCase> cases;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && text::to_lower(entry.path().extension().string()) == ".json") {
      cases.push_back(load_eval_case(entry.path().string()));
    }
  }
  std::sort(cases.begin(), cases.end(), [](const EvalCase& a, const EvalCase& b) { return a.id < b.id; });
  return cases;
}

// --- running ---------------------------------------------------------------

namespace {

// Shared across threads for the remote backend so its in-flight bound is global.
struct SourcePool {
  const BackendConfig& cfg;
  std::unique_ptr<CompletionSource> remote;
  std::string remote_error;

  explicit SourcePool(const BackendConfig& c) : cfg(c) {
    if (cfg.kind != BackendKind::Remote) return;
    try {
      remote = make_completion_source(cfg);
    } catch (const Error& e) {
      remote_error = e.what();
    }
  }
};

CaseOutcome run_case(const EvalCase& ec, SourcePool& pool, const EvalOptions& options) {
  CaseOutcome out{ec.id, ec.category, false, 0, {}, {}};
  Prompt prompt;
  try {
    prompt = generate_prompt(ec.page, options.prompt, ec.id);
  } catch (const Error& e) {
    out.error = e.what();
    return out;
  }

  for (int attempt = 0; attempt < options.attempts && !out.passed; ++attempt) {
    out.attempts_used = attempt + 1;
    try {
      GenerationResult result;
      if (pool.cfg.kind == BackendKind::Remote) {
        if (!pool.remote) throw Error(ErrorKind::AuthError, pool.remote_error);
        result = generate(prompt, *pool.remote);
      } else {
        result = generate(prompt, pool.cfg, attempt);
      }
      out.inputs = result.widget_inputs;

      // All widgets are filled before any rule runs, as on a real form submit.
      bool ok = true;
      for (const auto& [widget, rule] : ec.rules) {
        auto it = result.widget_inputs.find(widget);
        if (it == result.widget_inputs.end() || !validate(it->second, rule, result.widget_inputs)) {
          ok = false;
          out.error = "widget " + std::to_string(widget) + " failed " + std::string(to_string(rule.kind));
          break;
        }
      }
      if (ok) {
        out.passed = true;
        out.error.clear();
      }
    } catch (const Error& e) {
      out.error = e.what();
    }
  }
  return out;
}

EvalReport assemble(std::vector<CaseOutcome> outcomes, const BackendConfig& cfg, const EvalOptions& options) {
  EvalReport report;
  report.attempts = options.attempts;
  report.backend = cfg.kind;
  std::sort(outcomes.begin(), outcomes.end(), [](const CaseOutcome& a, const CaseOutcome& b) { return a.id < b.id; });
  report.per_case = std::move(outcomes);
  if (report.per_case.empty()) return report;

  std::map<InputCategory, std::pair<std::size_t, std::size_t>> tally;  // passed, total
  for (const auto& c : report.per_case) {
    auto& [passed, total] = tally[c.category];
    passed += c.passed ? 1 : 0;
    ++total;
  }
  for (const auto& [cat, t] : tally) {
    report.per_category[cat] = static_cast<double>(t.first) / static_cast<double>(t.second);
  }
  report.overall = static_cast<double>(report.passed_count()) / static_cast<double>(report.per_case.size());
  return report;
}

}  // namespace

EvalReport run_eval_serial(std::span<const EvalCase> cases, const BackendConfig& cfg, const EvalOptions& options) {
  SourcePool pool(cfg);
  std::vector<CaseOutcome> outcomes;
  for (const auto& ec : cases) outcomes.push_back(run_case(ec, pool, options));
  return assemble(std::move(outcomes), cfg, options);
}

EvalReport run_eval(std::span<const EvalCase> cases, const BackendConfig& cfg, const EvalOptions& options) {
  SourcePool pool(cfg);
  const auto n = static_cast<std::ptrdiff_t>(cases.size());
  std::vector<CaseOutcome> outcomes(cases.size());

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    outcomes[i] = run_case(cases[i], pool, options);
  }
  return assemble(std::move(outcomes), cfg, options);
}

// --- reporting -------------------------------------------------------------

nlohmann::ordered_json report_to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["backend"] = std::string(to_string(report.backend));
  j["attempts"] = report.attempts;
  j["cases"] = report.per_case.size();
  j["passed"] = report.passed_count();
  if (report.overall) {
    j["overall"] = *report.overall;
    nlohmann::ordered_json cats = nlohmann::ordered_json::object();
    for (const auto& [cat, rate] : report.per_category) cats[std::string(to_string(cat))] = rate;
    j["per_category"] = cats;
  }
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& c : report.per_case) {
    nlohmann::ordered_json row;
    row["id"] = c.id;
    row["category"] = std::string(to_string(c.category));
    row["passed"] = c.passed;
    row["attempts_used"] = c.attempts_used;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
    for (const auto& [id, value] : c.inputs) inputs[std::to_string(id)] = value;
    row["inputs"] = inputs;
    if (!c.error.empty()) row["error"] = c.error;
    rows.push_back(row);
  }
  j["per_case"] = rows;
  return j;
}

std::string summary_table(const EvalReport& report) {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof line, "%-12s %6s %7s %6s\n", "category", "cases", "passed", "rate");
  out += line;
  std::map<InputCategory, std::pair<std::size_t, std::size_t>> tally;
  for (const auto& c : report.per_case) {
    auto& t = tally[c.category];
    t.first += c.passed ? 1 : 0;
    ++t.second;
  }
  for (const auto& [cat, t] : tally) {
    std::snprintf(line, sizeof line, "%-12s %6zu %7zu %6.2f\n", std::string(to_string(cat)).c_str(), t.second,
                  t.first, static_cast<double>(t.first) / static_cast<double>(t.second));
    out += line;
  }
  if (report.overall) {
    std::snprintf(line, sizeof line, "%-12s %6zu %7zu %6.2f\n", "overall", report.per_case.size(),
                  report.passed_count(), *report.overall);
  } else {
    std::snprintf(line, sizeof line, "%-12s %6d %7d %6s\n", "overall", 0, 0, "-");
  }
  out += line;
  return out;
}

}  // namespace uitext
