// Copyright 2026 The IdiomLex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "idiomlex/llm/http_backend.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "idiomlex/error.h"
#include "idiomlex/rng.h"
#include "idiomlex/text.h"

namespace idiomlex::llm {

namespace {

std::atomic<std::uint64_t> g_http_calls{0};

bool transient_status(int status) {
  return status == 408 || status == 429 || (status >= 500 && status <= 599);
}

std::string excerpt(std::string_view body) {
  return std::string(text::truncate_utf8(text::trim(body), 200));
}

}  // namespace

std::string api_key_from_env() {
  const char* key = std::getenv(kApiKeyEnv);
  if (key == nullptr || text::trim(key).empty()) {
    throw Error(ErrorCode::kAuthMissing,
                std::string("live backend needs the ") + kApiKeyEnv +
                    " environment variable");
  }
  return key;
}

std::uint64_t HttpBackend::total_http_calls() { return g_http_calls.load(); }

HttpBackend::HttpBackend(HttpConfig config)
    : config_(std::move(config)),
      limiter_(config_.requests_per_minute, config_.burst) {
  if (text::trim(config_.api_key).empty()) {
    throw Error(ErrorCode::kAuthMissing,
                std::string("no API key configured; set ") + kApiKeyEnv);
  }
  const std::string& url = config_.base_url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::kConfigInvalid, "base URL needs a scheme: " + url);
  }
  const std::string scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorCode::kConfigInvalid, "unsupported URL scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
  if (scheme_host_port_.size() <= scheme_end + 3) {
    throw Error(ErrorCode::kConfigInvalid, "base URL has no host: " + url);
  }
  id_ = config_.id.empty() ? "openai-chat@" + scheme_host_port_ + path_prefix_ : config_.id;
}

BackendResponse HttpBackend::complete(const ChatRequest& request) {
  request.validate();
  nlohmann::json body = {{"model", request.params.model},
                         {"messages", messages_to_json(request.messages)},
                         {"temperature", request.params.temperature},
                         {"max_tokens", request.params.max_tokens}};
  const std::string payload = body.dump();
  const httplib::Headers headers = {{"Authorization", "Bearer " + config_.api_key}};
  const std::string path = path_prefix_ + "/chat/completions";

  const RetryPolicy& retry = config_.retry;
  // Jitter only shapes timing, so a fixed per-request stream is fine.
  SeededRng jitter_rng(derive_seed(static_cast<std::uint64_t>(request.params.sample_index),
                                   request.messages.back().content));
  std::string last_error;
  bool last_was_rate_limit = false;

  for (int attempt = 0; attempt <= retry.max_retries; ++attempt) {
    limiter_.acquire();
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    client.set_write_timeout(config_.timeout);

    attempts_.fetch_add(1);
    g_http_calls.fetch_add(1);
    const auto start = std::chrono::steady_clock::now();
    const httplib::Result res = client.Post(path, headers, payload, "application/json");
    const auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);

    std::chrono::milliseconds retry_after{0};
    if (!res) {
      last_error = "connection failed: " + httplib::to_string(res.error());
      last_was_rate_limit = false;
    } else if (res->status == 200) {
      const auto j = nlohmann::json::parse(res->body, nullptr, false);
      if (j.is_discarded() || !j.contains("choices") || !j["choices"].is_array() ||
          j["choices"].empty()) {
        throw Error(ErrorCode::kTransportFailure,
                    "unexpected completion payload: " + excerpt(res->body));
      }
      const auto& choice = j["choices"][0];
      std::string content;
      if (choice.contains("message") && choice["message"].contains("content") &&
          choice["message"]["content"].is_string()) {
        content = choice["message"]["content"].get<std::string>();
      }
      const std::string finish =
          choice.contains("finish_reason") && choice["finish_reason"].is_string()
              ? choice["finish_reason"].get<std::string>()
              : "";
      if (finish == "length") {
        throw Error(ErrorCode::kTruncated, "reply hit max_tokens=" +
                                               std::to_string(request.params.max_tokens) +
                                               " at step '" + request.step + "'");
      }
      if (text::trim(content).empty()) {
        throw Error(ErrorCode::kTruncated, "empty reply at step '" + request.step + "'");
      }
      BackendResponse r;
      r.text = std::move(content);
      r.backend_id = id_;
      r.latency_ms = latency.count();
      return r;
    } else if (transient_status(res->status)) {
      last_error = "HTTP " + std::to_string(res->status) + ": " + excerpt(res->body);
      last_was_rate_limit = res->status == 429;
      if (res->has_header("Retry-After")) {
        const std::string value = res->get_header_value("Retry-After");
        char* end = nullptr;
        const double seconds = std::strtod(value.c_str(), &end);
        if (end != value.c_str() && seconds >= 0) {
          retry_after = std::chrono::milliseconds(
              static_cast<std::int64_t>(std::min(seconds, 300.0) * 1000));
        }
      }
    } else {
      throw Error(ErrorCode::kTransportFailure,
                  "HTTP " + std::to_string(res->status) + ": " + excerpt(res->body));
    }

    if (attempt == retry.max_retries) break;
    const double base = std::min(
        static_cast<double>(retry.max_backoff.count()),
        static_cast<double>(retry.initial_backoff.count()) * std::pow(retry.multiplier, attempt));
    const double u = static_cast<double>(jitter_rng.uniform_below(1000)) / 1000.0;
    auto delay = std::chrono::milliseconds(static_cast<std::int64_t>(base * (1.0 + retry.jitter * u)));
    delay = std::max(delay, retry_after);
    std::this_thread::sleep_for(delay);
  }

  throw Error(last_was_rate_limit ? ErrorCode::kRateLimited : ErrorCode::kTransportFailure,
              "giving up after " + std::to_string(retry.max_retries + 1) +
                  " attempts: " + last_error);
}

}  // namespace idiomlex::llm
