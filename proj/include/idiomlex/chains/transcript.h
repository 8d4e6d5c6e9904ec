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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "idiomlex/error.h"
#include "idiomlex/lexicon.h"
#include "idiomlex/llm/backend.h"
#include "idiomlex/strategy.h"

namespace idiomlex::chains {

// One sample's verdict. Exactly one of label / parse_error is set.
struct ChainPrediction {
  std::optional<SentimentLabel> label;
  std::string raw_response;
  std::vector<std::string> step_trace;  // steps that fed this prediction
  std::optional<std::string> parse_error;
  std::string sentence;  // the example judged, when there is one

  static ChainPrediction parsed(SentimentLabel label, std::string raw,
                                std::vector<std::string> trace, std::string sentence = "");
  static ChainPrediction failed(std::string reason, std::string raw,
                                std::vector<std::string> trace, std::string sentence = "");

  bool operator==(const ChainPrediction&) const = default;
};

struct VoteTally {
  std::array<int, 3> counts{};  // indexed by SentimentLabel

  int count(SentimentLabel label) const { return counts[static_cast<std::size_t>(label)]; }
  int total() const { return counts[0] + counts[1] + counts[2]; }

  bool operator==(const VoteTally&) const = default;
};

struct Exchange {
  llm::ChatRequest request;
  std::string response;
  std::optional<std::string> error;  // e.g. a truncated reply

  bool operator==(const Exchange&) const = default;
};

struct TranscriptFailure {
  ErrorCode code;
  std::string message;

  bool operator==(const TranscriptFailure&) const = default;
};

// Everything one strategy run did for one idiom.
struct ChainTranscript {
  IdiomEntry idiom;
  StrategyKind strategy = StrategyKind::kDirect;
  std::string template_version;
  // Every backend call in issue order. For DualCoTs the literal chain's
  // calls come first, then the etymological chain's.
  std::vector<Exchange> exchanges;
  std::optional<std::string> origin;
  std::optional<std::string> context_sentence;       // usage strategies
  std::optional<std::string> context_passage_id;     // when taken from the corpus
  std::vector<ChainPrediction> predictions;          // baselines
  std::vector<ChainPrediction> literal_predictions;  // DualCoTs
  std::vector<ChainPrediction> etymological_predictions;
  std::optional<SentimentLabel> final_label;
  VoteTally tally;
  std::optional<TranscriptFailure> failure;

  // All predictions that take part in the vote.
  std::vector<ChainPrediction> all_predictions() const;

  bool operator==(const ChainTranscript&) const = default;
};

// Per-idiom failure that still carries what was collected so far. The
// runner turns these into transcripts with `failure` set; anything else
// thrown by a chain aborts the run.
class ChainError : public Error {
 public:
  ChainError(ErrorCode code, const std::string& message, ChainTranscript partial)
      : Error(code, message), partial_(std::move(partial)) {}

  const ChainTranscript& partial() const { return partial_; }

 private:
  ChainTranscript partial_;
};

nlohmann::json prediction_to_json(const ChainPrediction& p);
ChainPrediction prediction_from_json(const nlohmann::json& j);

nlohmann::json transcript_to_json(const ChainTranscript& t);
ChainTranscript transcript_from_json(const nlohmann::json& j);

// JSON Lines, one transcript per line. Latency and cache flags are not
// stored, so a warm-cache rerun writes the same bytes.
std::string transcripts_to_jsonl(const std::vector<ChainTranscript>& transcripts);
void write_transcripts(const std::vector<ChainTranscript>& transcripts,
                       const std::filesystem::path& path);
std::vector<ChainTranscript> read_transcripts(const std::filesystem::path& path);

}  // namespace idiomlex::chains
