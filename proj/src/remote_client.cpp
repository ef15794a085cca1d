#include <atomic>
#include <cstdlib>
#include <regex>
#include <semaphore>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "uitext/backend.hpp"
#include "uitext/errors.hpp"
#include "uitext/text_util.hpp"

namespace uitext {

namespace {

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, kUrl)) throw Error(ErrorKind::ConfigError, "bad endpoint url " + url);
  return Endpoint{m[1], m[2].matched ? std::string(m[2]) : std::string("/")};
}

constexpr std::ptrdiff_t kMaxInFlightCap = 256;

}  // namespace

struct RemoteCompletion::Impl {
  BackendConfig cfg;
  Endpoint endpoint;
  std::string api_key;
  std::counting_semaphore<kMaxInFlightCap> in_flight;
  std::atomic<int> attempts{0};

  Impl(BackendConfig c, Endpoint e, std::string key)
      : cfg(std::move(c)),
        endpoint(std::move(e)),
        api_key(std::move(key)),
        in_flight(std::min<std::ptrdiff_t>(cfg.max_in_flight, kMaxInFlightCap)) {}
};

RemoteCompletion::RemoteCompletion(BackendConfig cfg) {
  cfg.validate();
  const char* key = std::getenv(cfg.api_key_env.c_str());
  if (!key || text::is_blank(key)) {
    throw Error(ErrorKind::AuthError, "environment variable " + cfg.api_key_env + " is not set");
  }
  Endpoint endpoint = split_url(*cfg.endpoint_url);
  impl_ = std::make_unique<Impl>(std::move(cfg), std::move(endpoint), text::trim(key));
}

RemoteCompletion::~RemoteCompletion() = default;

int RemoteCompletion::attempts_made() const { return impl_->attempts.load(); }

std::string RemoteCompletion::complete(const Prompt&, const PromptFragment&, std::string_view prefix) {
  return post_completion(prefix);
}

std::string RemoteCompletion::post_completion(std::string_view prompt_text) {
  Impl& s = *impl_;
  nlohmann::ordered_json body;
  body["model"] = s.cfg.model_name;
  body["prompt"] = std::string(prompt_text);
  body["max_tokens"] = s.cfg.max_tokens;
  body["temperature"] = s.cfg.temperature;
  const std::string payload = body.dump();
  const httplib::Headers headers = {{"Authorization", "Bearer " + s.api_key}};

  s.in_flight.acquire();
  struct Release {
    std::counting_semaphore<kMaxInFlightCap>& sem;
    ~Release() { sem.release(); }
  } release{s.in_flight};

  httplib::Client client(s.endpoint.origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(s.cfg.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(s.cfg.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  std::string last_failure = "no attempt made";
  auto backoff = s.cfg.retry_backoff;
  for (int attempt = 0; attempt <= s.cfg.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    ++s.attempts;
    auto res = client.Post(s.endpoint.path, headers, payload, "application/json");
    if (!res) {
      last_failure = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 401 || res->status == 403) {
      throw Error(ErrorKind::AuthError, "server rejected credentials (HTTP " + std::to_string(res->status) + ")");
    }
    if (res->status >= 500 || res->status == 429) {
      last_failure = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw Error(ErrorKind::BackendUnavailable, "unexpected HTTP " + std::to_string(res->status));
    }

    const auto doc = nlohmann::json::parse(res->body, nullptr, false);
    if (doc.is_discarded() || !doc.contains("choices") || !doc["choices"].is_array() || doc["choices"].empty()) {
      throw Error(ErrorKind::BackendUnavailable, "response lacks a choices array");
    }
    const auto& choice = doc["choices"][0];
    const std::string completion = choice.value("text", std::string{});
    if (text::is_blank(completion)) {
      if (choice.value("finish_reason", std::string{}) == "length") {
        throw Error(ErrorKind::BudgetExceeded, "completion truncated before any usable token");
      }
      throw Error(ErrorKind::EmptyCompletion, "server returned an empty completion");
    }
    return completion;
  }
  throw Error(ErrorKind::BackendUnavailable,
              last_failure + " after " + std::to_string(s.cfg.max_retries + 1) + " attempts");
}

}  // namespace uitext
