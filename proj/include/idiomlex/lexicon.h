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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace idiomlex {

enum class SentimentLabel { kPositive, kNegative, kNeutral };

inline constexpr std::array<SentimentLabel, 3> kAllLabels = {
    SentimentLabel::kPositive, SentimentLabel::kNegative,
    SentimentLabel::kNeutral};

std::string_view to_string(SentimentLabel label);
// Accepts "positive" / "negative" / "neutral" in any ASCII case.
std::optional<SentimentLabel> label_from_string(std::string_view s);

enum class Language { kZh, kEn };

std::string_view to_string(Language language);
// Accepts "zh" / "en" in any ASCII case.
std::optional<Language> language_from_string(std::string_view s);

// The seven coarse CALO categories.
enum class CoarseEmotion { kJoy, kGood, kAnger, kSadness, kFear, kDisgust, kSurprise };

inline constexpr std::size_t kCoarseEmotionCount = 7;

std::string_view to_string(CoarseEmotion coarse);
std::string_view chinese_name(CoarseEmotion coarse);
// Accepts the English name ("disgust") or the Chinese character ("恶").
std::optional<CoarseEmotion> coarse_emotion_from_string(std::string_view s);

struct FineEmotion {
  std::string_view code;     // two-letter CALO code, e.g. "PA"
  std::string_view name_zh;  // 快乐
  std::string_view name_en;  // happiness
  CoarseEmotion coarse;
};

// Static 21-entry fine -> coarse table.
std::span<const FineEmotion> calo_fine_emotions();
const FineEmotion* find_fine_emotion(std::string_view code);

class EmotionAnnotation {
 public:
  // Throws Error{kInvalidArgument} when the intensity is not one of
  // {1,3,5,7,9} or the fine code does not belong to `coarse`.
  static EmotionAnnotation make(CoarseEmotion coarse, std::string_view fine,
                                int intensity);

  CoarseEmotion coarse() const { return coarse_; }
  const std::string& fine() const { return fine_; }
  int intensity() const { return intensity_; }

  bool operator==(const EmotionAnnotation&) const = default;

 private:
  EmotionAnnotation(CoarseEmotion coarse, std::string fine, int intensity)
      : coarse_(coarse), fine_(std::move(fine)), intensity_(intensity) {}

  CoarseEmotion coarse_;
  std::string fine_;
  int intensity_;
};

struct IdiomEntry {
  std::string surface;
  Language language = Language::kZh;
  std::optional<SentimentLabel> gold_sentiment;
  std::vector<EmotionAnnotation> emotions;
  std::string source;

  bool labeled() const { return gold_sentiment.has_value(); }

  bool operator==(const IdiomEntry&) const = default;
};

// Lexicon JSON Lines schema:
//   {"surface": ..., "language": "zh"|"en", "sentiment": ...,
//    "emotions": [{"coarse": ..., "fine": ..., "intensity": ...}],
//    "source": ...}
// Only surface and language are required. Throws Error{kMalformedLine}.
nlohmann::json idiom_to_json(const IdiomEntry& entry);
IdiomEntry idiom_from_json(const nlohmann::json& j);

}  // namespace idiomlex
