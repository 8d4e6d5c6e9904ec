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

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "idiomlex/chains/strategies.h"

namespace idiomlex::chains {

struct RunItem {
  IdiomEntry idiom;
  std::optional<dataset::CorpusDocument> passage;  // for the usage baseline
};

// Runs `strategy` for every item on up to `workers` threads. Results come
// back in input order whatever the completion order. The first fatal error
// (backend, template) stops further work and is rethrown after all workers
// have finished. `on_done` is called under a lock as each item finishes.
std::vector<ChainTranscript> run_batch(
    std::span<const RunItem> items, StrategyKind strategy, const ChainContext& ctx,
    std::size_t workers,
    const std::function<void(std::size_t index, const ChainTranscript&)>& on_done = {});

}  // namespace idiomlex::chains
