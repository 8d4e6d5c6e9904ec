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

#include "idiomlex/chains/runner.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace idiomlex::chains {

std::vector<ChainTranscript> run_batch(
    std::span<const RunItem> items, StrategyKind strategy, const ChainContext& ctx,
    std::size_t workers,
    const std::function<void(std::size_t, const ChainTranscript&)>& on_done) {
  std::vector<std::optional<ChainTranscript>> slots(items.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr first_error;

  const auto work = [&] {
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        ChainTranscript t = run_strategy(strategy, items[i].idiom, ctx, items[i].passage);
        std::lock_guard lock(mu);
        if (on_done) on_done(i, t);
        slots[i] = std::move(t);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!first_error) first_error = std::current_exception();
        stop.store(true);
      }
    }
  };

  const std::size_t n = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(1, items.size()));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < n; ++w) pool.emplace_back(work);
    work();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<ChainTranscript> out;
  out.reserve(items.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace idiomlex::chains
