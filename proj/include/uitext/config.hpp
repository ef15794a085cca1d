#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uitext/backend.hpp"
#include "uitext/context.hpp"
#include "uitext/eval.hpp"
#include "uitext/prompt.hpp"
#include "uitext/taxonomy.hpp"
#include "uitext/tuning.hpp"

namespace uitext {

// Application settings. Config files hold "key = value" lines; '#' starts a
// comment. Recognised keys:
//   glossary_path, pattern_overrides, category_order (comma list),
//   input_keywords (comma list), row_tolerance, parent_depth, leaf_limit,
//   backend, endpoint_url, model_name, max_tokens, temperature, api_key_env,
//   timeout_ms, max_retries, retry_backoff_ms, max_in_flight, seed,
//   mock_table, attempts, list_gap
struct AppConfig {
  std::optional<std::string> glossary_path;
  std::optional<std::string> pattern_overrides;
  std::vector<InputCategory> category_order = canonical_category_order();
  BackendConfig backend;
  ContextOptions context;
  int attempts = 3;
  int list_gap = 200;

  // Applies one key/value pair. Throws Error{ConfigError}.
  void set(std::string_view key, std::string_view value);

  PromptOptions prompt_options() const;
  TuningOptions tuning_options() const;
  EvalOptions eval_options() const;
};

// Relative paths in the file resolve against the file's directory.
AppConfig load_app_config(const std::string& path);

}  // namespace uitext
