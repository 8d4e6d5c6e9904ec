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

#include "idiomlex/llm/rate_limiter.h"

#include <algorithm>
#include <thread>

namespace idiomlex::llm {

RateLimiter::RateLimiter(double requests_per_minute, int burst)
    : per_second_(requests_per_minute > 0 ? requests_per_minute / 60.0 : 0.0),
      capacity_(std::max(1, burst)),
      tokens_(capacity_) {}

RateLimiter::Clock::time_point RateLimiter::reserve(Clock::time_point now) {
  if (!enabled()) return now;
  std::lock_guard lock(mu_);
  if (started_ && now > last_) {
    const double elapsed = std::chrono::duration<double>(now - last_).count();
    tokens_ = std::min(capacity_, tokens_ + elapsed * per_second_);
  }
  if (!started_ || now > last_) last_ = now;
  started_ = true;
  tokens_ -= 1.0;
  if (tokens_ >= 0) return now;
  const auto wait = std::chrono::duration<double>(-tokens_ / per_second_);
  return last_ + std::chrono::duration_cast<Clock::duration>(wait);
}

void RateLimiter::acquire() {
  const auto now = Clock::now();
  const auto ready = reserve(now);
  if (ready > now) std::this_thread::sleep_until(ready);
}

}  // namespace idiomlex::llm
