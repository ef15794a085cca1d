#include "uitext/backend.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <random>

#include <json.hpp>

#include "uitext/errors.hpp"
#include "uitext/text_util.hpp"

namespace uitext {

std::string_view to_string(BackendKind kind) {
  switch (kind) {
    case BackendKind::Remote: return "remote";
    case BackendKind::Mock: return "mock";
    case BackendKind::RandomBaseline: return "random";
  }
  return "mock";
}

std::optional<BackendKind> parse_backend_kind(std::string_view s) {
  const std::string lower = text::to_lower(text::trim(s));
  if (lower == "remote") return BackendKind::Remote;
  if (lower == "mock") return BackendKind::Mock;
  if (lower == "random" || lower == "randombaseline") return BackendKind::RandomBaseline;
  return std::nullopt;
}

void BackendConfig::validate() const {
  auto bad = [](const std::string& why) { return Error(ErrorKind::ConfigError, why); };
  if (kind == BackendKind::Remote && (!endpoint_url || endpoint_url->empty())) {
    throw bad("remote backend requires endpoint_url");
  }
  if (max_tokens <= 0) throw bad("max_tokens must be positive");
  if (!(temperature >= 0.0 && temperature <= 2.0)) throw bad("temperature must lie in [0, 2]");
  if (max_retries < 0) throw bad("max_retries must be non-negative");
  if (max_in_flight <= 0) throw bad("max_in_flight must be positive");
  if (timeout.count() <= 0) throw bad("timeout must be positive");
}

// --- mock ------------------------------------------------------------------

MockTable MockTable::from_json(std::string_view document) {
  const auto doc = nlohmann::json::parse(document.begin(), document.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array()) {
    throw Error(ErrorKind::ConfigError, "mock table must be an object with an entries array");
  }
  MockTable table;
  for (const auto& row : doc["entries"]) {
    if (!row.is_object() || !row.contains("category") || !row.contains("value")) {
      throw Error(ErrorKind::ConfigError, "mock row needs category and value");
    }
    auto cat = parse_category(row["category"].get<std::string>());
    if (!cat) throw Error(ErrorKind::ConfigError, "unknown mock category " + row["category"].dump());
    const std::string subject = row.value("subject", std::string("*"));
    table.rows_[{*cat, text::to_lower(subject)}] = row["value"].get<std::string>();
  }
  return table;
}

const MockTable& MockTable::bundled() {
  static const MockTable kTable = from_json(text::embedded_resource("mock_table.json"));
  return kTable;
}

MockTable MockTable::load(const std::string& path) { return from_json(text::read_file(path)); }

const std::string& MockTable::lookup(InputCategory category, const std::string& subject) const {
  if (auto it = rows_.find({category, text::to_lower(subject)}); it != rows_.end()) return it->second;
  if (auto it = rows_.find({category, "*"}); it != rows_.end()) return it->second;
  throw Error(ErrorKind::EmptyCompletion,
              "mock table has no row for " + std::string(to_string(category)) + "/" + subject);
}

std::string MockCompletion::complete(const Prompt& prompt, const PromptFragment& fragment, std::string_view) {
  const InputCategory cat = prompt.category == InputCategory::Unknown ? InputCategory::Query : prompt.category;
  const std::string& value = table_.lookup(cat, fragment.subject);
  // Shaped like a model continuation so the cutting rules are exercised.
  if (fragment.is_mask()) {
    return fragment.mask_suffix.empty() ? value + "\nNext" : value + " " + fragment.mask_suffix + " and more\n";
  }
  return value + "\nThis is";
}

// --- random ----------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::string RandomCompletion::complete(const Prompt&, const PromptFragment& fragment, std::string_view) {
  static constexpr std::string_view kAlphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789";
  const std::uint64_t widget = fragment.widget.value_or(0);
  std::mt19937_64 rng(splitmix64(seed_ ^ splitmix64(widget + 1)));
  std::string out(8, ' ');
  for (auto& c : out) c = kAlphabet[rng() % kAlphabet.size()];
  return out;
}

std::unique_ptr<CompletionSource> make_completion_source(const BackendConfig& cfg, int attempt) {
  switch (cfg.kind) {
    case BackendKind::Mock: {
      if (cfg.mock_table_path.empty()) return std::make_unique<MockCompletion>();
      // The source only borrows its table; keep loaded tables alive for the process.
      static std::mutex mu;
      static std::map<std::string, std::unique_ptr<MockTable>> cache;
      std::lock_guard lock(mu);
      auto& slot = cache[cfg.mock_table_path];
      if (!slot) slot = std::make_unique<MockTable>(MockTable::load(cfg.mock_table_path));
      return std::make_unique<MockCompletion>(*slot);
    }
    case BackendKind::RandomBaseline:
      return std::make_unique<RandomCompletion>(splitmix64(cfg.seed) + static_cast<std::uint64_t>(attempt));
    case BackendKind::Remote:
      return std::make_unique<RemoteCompletion>(cfg);
  }
  throw Error(ErrorKind::ConfigError, "unknown backend kind");
}

// --- extraction ------------------------------------------------------------

std::string cut_continuation(std::string_view completion) {
  std::size_t end = completion.size();
  for (std::size_t i = 0; i < completion.size(); ++i) {
    const char c = completion[i];
    if (c == '\n' || c == '\r') {
      end = i;
      break;
    }
    if (c == '.' || c == '!' || c == '?') {
      const bool at_end = i + 1 == completion.size();
      if (at_end || text::whitespace_len(completion, i + 1) > 0) {
        end = i;
        break;
      }
    }
  }
  std::string value = text::trim(completion.substr(0, end));
  // Models often answer "is: Titanic" or wrap the value in quotes.
  while (!value.empty() && (value.front() == ':' || value.front() == '"')) value = text::trim(value.substr(1));
  while (!value.empty() && value.back() == '"') value.pop_back();
  return value;
}

std::string cut_mask(std::string_view completion, std::string_view suffix) {
  std::size_t end = completion.find_first_of("\r\n");
  if (end == std::string_view::npos) end = completion.size();
  if (const std::string s = text::trim(suffix); !s.empty()) {
    // Word suffixes only match whole words: "to" must not cut "Toronto".
    auto alnum = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; };
    const std::string_view line = completion.substr(0, end);
    for (auto at = line.find(s); at != std::string_view::npos; at = line.find(s, at + 1)) {
      const bool left_ok = !alnum(s.front()) || at == 0 || !alnum(line[at - 1]);
      const bool right_ok = !alnum(s.back()) || at + s.size() == line.size() || !alnum(line[at + s.size()]);
      if (left_ok && right_ok) {
        end = at;
        break;
      }
    }
  }
  return text::trim(completion.substr(0, end));
}

std::map<NodeId, std::string> fill_masks(const Prompt& prompt,
                                         const std::function<std::string(const PromptFragment&)>& completion_for) {
  std::map<NodeId, std::string> out;
  for (const auto& f : prompt.fragments) {
    if (!f.is_mask()) continue;
    std::string value = cut_mask(completion_for(f), f.mask_suffix);
    if (value.empty()) {
      throw Error(ErrorKind::EmptyCompletion, "no value for mask of widget " + std::to_string(*f.mask_slot));
    }
    out[*f.mask_slot] = std::move(value);
  }
  return out;
}

GenerationResult generate(const Prompt& prompt, CompletionSource& source) {
  const auto start = std::chrono::steady_clock::now();
  GenerationResult result;
  result.backend_kind = source.kind();

  std::vector<std::string> raws;
  auto query = [&](std::size_t index) {
    const PromptFragment& f = prompt.fragments[index];
    std::string raw = source.complete(prompt, f, prompt.prefix_through(index));
    raws.push_back(raw);
    return raw;
  };

  std::map<const PromptFragment*, std::size_t> index_of;
  for (std::size_t i = 0; i < prompt.fragments.size(); ++i) index_of[&prompt.fragments[i]] = i;

  // Random baseline strings are used whole, for continuation and mask slots alike.
  const bool verbatim = source.kind() == BackendKind::RandomBaseline;
  for (std::size_t i = 0; i < prompt.fragments.size(); ++i) {
    const PromptFragment& f = prompt.fragments[i];
    if (!is_input_widget_pattern(f.pattern) || !f.widget) continue;
    if (f.is_mask() && !verbatim) continue;
    const std::string raw = query(i);
    std::string value = verbatim ? text::trim(raw) : cut_continuation(raw);
    if (value.empty()) throw Error(ErrorKind::EmptyCompletion, "empty completion for widget " + std::to_string(*f.widget));
    result.widget_inputs[*f.widget] = std::move(value);
  }
  const bool any_mask = std::any_of(prompt.fragments.begin(), prompt.fragments.end(),
                                    [](const PromptFragment& f) { return f.is_mask(); });
  if (any_mask && !verbatim) {
    auto masks = fill_masks(prompt, [&](const PromptFragment& f) { return query(index_of.at(&f)); });
    result.widget_inputs.merge(masks);
  }

  for (NodeId id : prompt.widget_order) {
    if (!result.widget_inputs.contains(id)) {
      throw Error(ErrorKind::EmptyCompletion, "widget " + std::to_string(id) + " received no value");
    }
  }
  result.raw_completion = text::join(raws, "\n");
  result.latency = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return result;
}

GenerationResult generate(const Prompt& prompt, const BackendConfig& cfg, int attempt) {
  cfg.validate();
  auto source = make_completion_source(cfg, attempt);
  return generate(prompt, *source);
}

// --- tuning manifest -------------------------------------------------------

std::string emit_tuning_manifest(const TuningConfig& cfg, const std::string& dataset_path,
                                 const std::string& manifest_path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(dataset_path, ec)) {
    throw Error(ErrorKind::IoError, "dataset not found: " + dataset_path);
  }
  nlohmann::ordered_json manifest;
  manifest["model"] = cfg.model_name;
  manifest["training_file"] = dataset_path;
  manifest["batch_size"] = cfg.batch_size;
  manifest["epochs"] = cfg.epochs;
  manifest["learning_rate_multiplier"] = cfg.learning_rate_multiplier;
  const std::string text_out = manifest.dump(2) + "\n";

  std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + manifest_path);
  out << text_out;
  if (!out) throw Error(ErrorKind::IoError, "write failed: " + manifest_path);
  return text_out;
}

}  // namespace uitext
