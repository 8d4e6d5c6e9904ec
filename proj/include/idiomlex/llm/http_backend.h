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

#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <string>

#include "idiomlex/llm/backend.h"
#include "idiomlex/llm/rate_limiter.h"

namespace idiomlex::llm {

inline constexpr const char* kApiKeyEnv = "IDIOMLEX_API_KEY";

struct RetryPolicy {
  int max_retries = 4;  // attempts after the first
  std::chrono::milliseconds initial_backoff{1000};
  std::chrono::milliseconds max_backoff{30000};
  double multiplier = 2.0;
  double jitter = 0.2;  // each delay is stretched by up to this fraction
};

struct HttpConfig {
  // Everything before "/chat/completions", e.g. "https://api.openai.com/v1".
  std::string base_url = "https://api.openai.com/v1";
  std::string api_key;
  std::chrono::seconds timeout{60};
  RetryPolicy retry;
  double requests_per_minute = 60;  // <= 0 disables the limiter
  int burst = 1;
  // Overrides the backend id that goes into cache keys.
  std::string id;
};

// Reads the credential from IDIOMLEX_API_KEY. Throws Error{kAuthMissing}.
std::string api_key_from_env();

// OpenAI-compatible chat-completions client. Transient failures (connection
// errors, 408, 429, 5xx) are retried with exponential backoff, honouring
// Retry-After. Throws kRateLimited when 429s outlast the retries, kTruncated
// when the reply was cut off or empty, kTransportFailure otherwise.
class HttpBackend : public ChatBackend {
 public:
  // Throws Error{kAuthMissing} when config.api_key is empty and
  // kConfigInvalid for an unusable base URL.
  explicit HttpBackend(HttpConfig config);

  BackendResponse complete(const ChatRequest& request) override;
  std::string id() const override { return id_; }

  // HTTP attempts made by this instance / by all instances in the process.
  std::uint64_t attempts() const { return attempts_.load(); }
  static std::uint64_t total_http_calls();

 private:
  HttpConfig config_;
  std::string scheme_host_port_;
  std::string path_prefix_;
  std::string id_;
  RateLimiter limiter_;
  std::atomic<std::uint64_t> attempts_{0};
};

}  // namespace idiomlex::llm
