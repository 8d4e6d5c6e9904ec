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

#include <chrono>
#include <mutex>

namespace idiomlex::llm {

// Token bucket holding up to `burst` tokens, refilled at `requests_per_minute`.
// Callers that find the bucket empty take a token on credit and sleep until
// it would have arrived, so admission order follows call order.
class RateLimiter {
 public:
  using Clock = std::chrono::steady_clock;

  // requests_per_minute <= 0 disables limiting.
  explicit RateLimiter(double requests_per_minute, int burst = 1);

  // Blocks until a request may start.
  void acquire();

  // Takes a token and returns when it becomes usable. Does not sleep.
  Clock::time_point reserve(Clock::time_point now);

  bool enabled() const { return per_second_ > 0; }

 private:
  std::mutex mu_;
  double per_second_;
  double capacity_;
  double tokens_;
  Clock::time_point last_{};
  bool started_ = false;
};

}  // namespace idiomlex::llm
