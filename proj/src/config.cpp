#include "uitext/config.hpp"

#include <charconv>
#include <filesystem>
#include <sstream>

#include "uitext/errors.hpp"
#include "uitext/text_util.hpp"

namespace uitext {

namespace {

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  const std::string v = text::trim(value);
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw Error(ErrorKind::ConfigError, std::string(key) + ": not a number: " + v);
  }
  return out;
}

std::vector<std::string> split_list(std::string_view value) {
  std::vector<std::string> out;
  std::stringstream in{std::string(value)};
  std::string item;
  while (std::getline(in, item, ',')) {
    item = text::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

void AppConfig::set(std::string_view key_in, std::string_view value_in) {
  const std::string key = text::trim(key_in);
  const std::string value = text::trim(value_in);
  if (key == "glossary_path") {
    glossary_path = value;
  } else if (key == "pattern_overrides") {
    pattern_overrides = value;
  } else if (key == "category_order") {
    std::vector<InputCategory> order;
    for (const auto& item : split_list(value)) {
      auto c = parse_category(item);
      if (!c || *c == InputCategory::Unknown) throw Error(ErrorKind::ConfigError, "bad category " + item);
      order.push_back(*c);
    }
    if (order.empty()) throw Error(ErrorKind::ConfigError, "category_order is empty");
    category_order = order;
  } else if (key == "input_keywords") {
    context.input_keywords = split_list(value);
  } else if (key == "row_tolerance") {
    context.row_tolerance = parse_number<int>(key, value);
  } else if (key == "parent_depth") {
    context.parent_depth = parse_number<int>(key, value);
  } else if (key == "leaf_limit") {
    context.leaf_limit = parse_number<std::size_t>(key, value);
  } else if (key == "backend") {
    auto kind = parse_backend_kind(value);
    if (!kind) throw Error(ErrorKind::ConfigError, "unknown backend " + value);
    backend.kind = *kind;
  } else if (key == "endpoint_url") {
    backend.endpoint_url = value;
  } else if (key == "model_name") {
    backend.model_name = value;
  } else if (key == "max_tokens") {
    backend.max_tokens = parse_number<int>(key, value);
  } else if (key == "temperature") {
    backend.temperature = parse_number<double>(key, value);
  } else if (key == "api_key_env") {
    backend.api_key_env = value;
  } else if (key == "timeout_ms") {
    backend.timeout = std::chrono::milliseconds(parse_number<long long>(key, value));
  } else if (key == "max_retries") {
    backend.max_retries = parse_number<int>(key, value);
  } else if (key == "retry_backoff_ms") {
    backend.retry_backoff = std::chrono::milliseconds(parse_number<long long>(key, value));
  } else if (key == "max_in_flight") {
    backend.max_in_flight = parse_number<int>(key, value);
  } else if (key == "seed") {
    backend.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "mock_table") {
    backend.mock_table_path = value;
  } else if (key == "attempts") {
    attempts = parse_number<int>(key, value);
    if (attempts <= 0) throw Error(ErrorKind::ConfigError, "attempts must be positive");
  } else if (key == "list_gap") {
    list_gap = parse_number<int>(key, value);
  } else {
    throw Error(ErrorKind::ConfigError, "unknown key " + key);
  }
}

PromptOptions AppConfig::prompt_options() const {
  PromptOptions opts;
  opts.context = context;
  opts.taxonomy = Taxonomy(load_glossaries(glossary_path.value_or("")), category_order);
  if (pattern_overrides) opts.patterns = PatternRegistry::from_file(*pattern_overrides);
  return opts;
}

TuningOptions AppConfig::tuning_options() const {
  TuningOptions opts;
  opts.list_gap = list_gap;
  opts.prompt = prompt_options();
  return opts;
}

EvalOptions AppConfig::eval_options() const {
  EvalOptions opts;
  opts.attempts = attempts;
  opts.prompt = prompt_options();
  return opts;
}

AppConfig load_app_config(const std::string& path) {
  namespace fs = std::filesystem;
  AppConfig cfg;
  std::istringstream in(text::read_file(path));
  const fs::path base = fs::path(path).parent_path();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = text::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::ConfigError, path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = text::trim(line.substr(0, eq));
    std::string value = text::trim(line.substr(eq + 1));
    if ((key == "glossary_path" || key == "pattern_overrides" || key == "mock_table") &&
        fs::path(value).is_relative()) {
      value = (base / value).string();
    }
    try {
      cfg.set(key, value);
    } catch (const Error& e) {
      throw Error(ErrorKind::ConfigError, path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return cfg;
}

}  // namespace uitext
