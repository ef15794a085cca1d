#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uitext/prompt.hpp"

namespace uitext {

enum class BackendKind { Remote, Mock, RandomBaseline };

std::string_view to_string(BackendKind kind);
// Accepts "remote", "mock", "random".
std::optional<BackendKind> parse_backend_kind(std::string_view s);

struct BackendConfig {
  BackendKind kind = BackendKind::Mock;
  std::optional<std::string> endpoint_url;
  std::string model_name = "curie";
  int max_tokens = 32;
  double temperature = 0.7;
  std::string api_key_env = "OPENAI_API_KEY";
  std::chrono::milliseconds timeout{10'000};
  int max_retries = 3;
  std::chrono::milliseconds retry_backoff{200};  // doubled after every failed attempt
  int max_in_flight = 4;
  std::uint64_t seed = 42;
  std::string mock_table_path;  // empty: bundled table

  // Throws Error{ConfigError} when the invariants do not hold.
  void validate() const;
};

struct GenerationResult {
  std::map<NodeId, std::string> widget_inputs;
  std::string raw_completion;
  BackendKind backend_kind = BackendKind::Mock;
  std::chrono::milliseconds latency{0};
};

// Produces raw completion text for one IW fragment. `prefix` is the prompt
// text up to the point where the model should continue.
class CompletionSource {
 public:
  virtual ~CompletionSource() = default;
  virtual BackendKind kind() const = 0;
  virtual std::string complete(const Prompt& prompt, const PromptFragment& fragment, std::string_view prefix) = 0;
};

// Deterministic stand-in for a hosted model: answers are looked up by
// (category, subject) with a per-category "*" row.
class MockTable {
 public:
  static const MockTable& bundled();
  static MockTable from_json(std::string_view document);
  static MockTable load(const std::string& path);

  // Throws Error{EmptyCompletion} when neither the exact row nor the
  // wildcard row exists.
  const std::string& lookup(InputCategory category, const std::string& subject) const;

 private:
  std::map<std::pair<InputCategory, std::string>, std::string> rows_;
};

class MockCompletion final : public CompletionSource {
 public:
  explicit MockCompletion(const MockTable& table = MockTable::bundled()) : table_(table) {}
  BackendKind kind() const override { return BackendKind::Mock; }
  std::string complete(const Prompt& prompt, const PromptFragment& fragment, std::string_view prefix) override;

 private:
  const MockTable& table_;
};

// Fixed-seed random 8-character alphanumeric strings.
class RandomCompletion final : public CompletionSource {
 public:
  explicit RandomCompletion(std::uint64_t seed) : seed_(seed) {}
  BackendKind kind() const override { return BackendKind::RandomBaseline; }
  std::string complete(const Prompt& prompt, const PromptFragment& fragment, std::string_view prefix) override;

 private:
  std::uint64_t seed_;
};

// HTTP completions client. Thread-safe; bounds concurrent requests to
// max_in_flight.
class RemoteCompletion final : public CompletionSource {
 public:
  // Throws Error{AuthError} when the key variable is unset and
  // Error{ConfigError} without an endpoint.
  explicit RemoteCompletion(BackendConfig cfg);
  ~RemoteCompletion() override;

  BackendKind kind() const override { return BackendKind::Remote; }
  std::string complete(const Prompt& prompt, const PromptFragment& fragment, std::string_view prefix) override;

  // Plain prompt-in, text-out call with retries.
  std::string post_completion(std::string_view prompt_text);

  int attempts_made() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Builds the source for `cfg`. `attempt` perturbs the random baseline so
// repeated attempts draw fresh strings.
std::unique_ptr<CompletionSource> make_completion_source(const BackendConfig& cfg, int attempt = 0);

// Continuation value: text up to the first newline or sentence terminator,
// trimmed.
std::string cut_continuation(std::string_view completion);

// Mask value: text up to the first occurrence of `suffix` or a newline,
// trimmed.
std::string cut_mask(std::string_view completion, std::string_view suffix);

// Queries `completion_for` for every mask fragment and cuts each answer.
// Throws Error{EmptyCompletion} for a slot whose value comes back empty.
std::map<NodeId, std::string> fill_masks(const Prompt& prompt,
                                         const std::function<std::string(const PromptFragment&)>& completion_for);

// One request per input widget; continuation and mask fragments are cut with
// the matching rule.
GenerationResult generate(const Prompt& prompt, CompletionSource& source);
GenerationResult generate(const Prompt& prompt, const BackendConfig& cfg, int attempt = 0);

struct TuningConfig {
  int batch_size = 64;
  int epochs = 100;
  double learning_rate_multiplier = 0.01;
  std::string model_name = "curie";
};

// Writes the JSON tuning manifest for an existing dataset and returns its
// text. Throws Error{IoError}.
std::string emit_tuning_manifest(const TuningConfig& cfg, const std::string& dataset_path,
                                 const std::string& manifest_path);

}  // namespace uitext
