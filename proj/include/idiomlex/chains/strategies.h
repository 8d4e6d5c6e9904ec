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
#include <string>
#include <vector>

#include "idiomlex/chains/templates.h"
#include "idiomlex/chains/transcript.h"
#include "idiomlex/dataset.h"
#include "idiomlex/llm/backend.h"

namespace idiomlex::chains {

// How DualCoTs gets several predictions out of one chain.
enum class ResampleMode {
  // One generation step yields N items, each judged once.
  kJudgeItems,
  // The whole chain runs N times with distinct sample indices, one item each.
  kResample,
};

std::string_view to_string(ResampleMode mode);  // "judge-items", "resample"
std::optional<ResampleMode> resample_mode_from_string(std::string_view s);

struct ChainOptions {
  std::string model = "gpt-3.5-turbo";
  double generation_temperature = 0.7;
  double judge_temperature = 0.0;
  int generation_max_tokens = 512;
  int judge_max_tokens = 128;
  int samples_per_chain = 5;
  ResampleMode resample_mode = ResampleMode::kJudgeItems;
  // Run the literal and etymological chains of one idiom concurrently.
  bool parallel_chains = true;
};

struct ChainContext {
  llm::ChatBackend& backend;
  const PromptTemplateSet& templates;
  ChainOptions options;
};

// Output of one DualCoTs chain.
struct ChainRun {
  std::vector<Exchange> exchanges;
  std::vector<ChainPrediction> predictions;  // always samples_per_chain slots
  std::optional<std::string> origin;
};

// Baselines. Each issues at most three requests and throws ChainError
// (kAllUnparseable, kGenerationEmpty, kOriginEmpty) for per-idiom failures.
ChainTranscript run_direct_inquiry(const IdiomEntry& idiom, const ChainContext& ctx);
ChainTranscript run_idiom_inquiry(const IdiomEntry& idiom, const ChainContext& ctx);
// Judges `passage` when given; otherwise asks the model for a sentence first.
ChainTranscript run_usage_inquiry(const IdiomEntry& idiom, const ChainContext& ctx,
                                  const std::optional<dataset::CorpusDocument>& passage);
ChainTranscript run_origin_inquiry(const IdiomEntry& idiom, const ChainContext& ctx);
ChainTranscript run_origin_usage_inquiry(const IdiomEntry& idiom, const ChainContext& ctx);

// Generate example sentences, then judge each one. Throws ChainError
// {kGenerationEmpty} when no sentence could be extracted.
ChainRun run_literal_chain(const IdiomEntry& idiom, const ChainContext& ctx);
// Ask for the origin, then origin-grounded examples, then judge each.
// Throws ChainError {kOriginEmpty, kGenerationEmpty}.
ChainRun run_etymological_chain(const IdiomEntry& idiom, const ChainContext& ctx);

// Both chains plus the vote. A chain that fails outright contributes
// unparsed slots; ChainError{kNoVotes} when nothing parsed at all.
ChainTranscript run_dualcots(const IdiomEntry& idiom, const ChainContext& ctx);

// Dispatches on `kind` and converts ChainError into a transcript with
// `failure` set. Backend and template errors propagate.
ChainTranscript run_strategy(StrategyKind kind, const IdiomEntry& idiom, const ChainContext& ctx,
                             const std::optional<dataset::CorpusDocument>& passage = std::nullopt);

}  // namespace idiomlex::chains
