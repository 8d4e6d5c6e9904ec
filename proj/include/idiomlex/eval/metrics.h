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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "idiomlex/chains/transcript.h"
#include "idiomlex/lexicon.h"
#include "idiomlex/strategy.h"

namespace idiomlex::eval {

// A percentage with one decimal, stored as an integer number of tenths so
// rounding and equality are exact.
class Percentage {
 public:
  constexpr Percentage() = default;
  static constexpr Percentage from_tenths(std::int64_t tenths) { return Percentage(tenths); }
  // 100 * num / den, rounded half away from zero. den must be > 0.
  static Percentage from_fraction(std::int64_t num, std::int64_t den);
  // Parses "54.0" / "54" (at most one decimal). Throws kInvalidArgument.
  static Percentage parse(std::string_view s);

  constexpr std::int64_t tenths() const { return tenths_; }
  double value() const { return static_cast<double>(tenths_) / 10.0; }
  std::string str() const;  // "66.7"

  auto operator<=>(const Percentage&) const = default;

 private:
  constexpr explicit Percentage(std::int64_t tenths) : tenths_(tenths) {}
  std::int64_t tenths_ = 0;
};

// Arithmetic mean of one-decimal values, rounded half away from zero.
// Throws kEmptyInput.
Percentage mean(std::span<const Percentage> values);

struct EvaluationRecord {
  std::string idiom;
  Language language = Language::kZh;
  StrategyKind strategy = StrategyKind::kDirect;
  // Missing when the chain failed for this idiom; scored as wrong.
  std::optional<SentimentLabel> predicted;
  std::optional<SentimentLabel> gold;
  std::string dataset_tag;

  bool operator==(const EvaluationRecord&) const = default;
};

EvaluationRecord record_from_transcript(const chains::ChainTranscript& t,
                                        std::string dataset_tag);

nlohmann::json record_to_json(const EvaluationRecord& r);
EvaluationRecord record_from_json(const nlohmann::json& j);
void write_records(std::span<const EvaluationRecord> records, const std::filesystem::path& path);
std::vector<EvaluationRecord> read_records(const std::filesystem::path& path);

// 100 * correct / total over records that all carry gold labels.
// Throws kEmptyInput, kInvalidArgument (a record without gold).
Percentage accuracy(std::span<const EvaluationRecord> records);

// 100 * matches / length. Throws kLengthMismatch, kEmptyInput.
Percentage percentage_agreement(std::span<const SentimentLabel> a,
                                std::span<const SentimentLabel> b);

}  // namespace idiomlex::eval
