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

#include "idiomlex/calo.h"

#include <string>

#include "idiomlex/error.h"
#include "idiomlex/text.h"

namespace idiomlex {

PolarityTable PolarityTable::defaults() {
  PolarityTable t;
  t.set(CoarseEmotion::kJoy, SentimentLabel::kPositive);
  t.set(CoarseEmotion::kGood, SentimentLabel::kPositive);
  t.set(CoarseEmotion::kAnger, SentimentLabel::kNegative);
  t.set(CoarseEmotion::kSadness, SentimentLabel::kNegative);
  t.set(CoarseEmotion::kFear, SentimentLabel::kNegative);
  t.set(CoarseEmotion::kDisgust, SentimentLabel::kNegative);
  t.set(CoarseEmotion::kSurprise, SentimentLabel::kNeutral);
  return t;
}

PolarityTable PolarityTable::parse(std::string_view text) {
  PolarityTable t = defaults();
  int line_no = 0;
  for (const std::string& raw : text::split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = text::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfigInvalid,
                  "polarity table line " + std::to_string(line_no) +
                      ": expected 'coarse = label'");
    }
    const auto coarse = coarse_emotion_from_string(line.substr(0, eq));
    const auto label = label_from_string(line.substr(eq + 1));
    if (!coarse || !label) {
      throw Error(ErrorCode::kConfigInvalid,
                  "polarity table line " + std::to_string(line_no) +
                      ": unknown category or label");
    }
    t.set(*coarse, *label);
  }
  return t;
}

SentimentLabel calo_to_sentiment(std::span<const EmotionAnnotation> emotions,
                                 const PolarityTable& table) {
  if (emotions.empty()) {
    throw Error(ErrorCode::kEmptyAnnotation, "no emotion annotations");
  }
  std::array<int, 3> weight{};
  for (const auto& e : emotions) {
    weight[static_cast<std::size_t>(table.polarity(e.coarse()))] +=
        e.intensity();
  }
  int best = -1;
  int best_count = 0;
  SentimentLabel winner = SentimentLabel::kNeutral;
  for (SentimentLabel label : kAllLabels) {
    const int w = weight[static_cast<std::size_t>(label)];
    if (w > best) {
      best = w;
      best_count = 1;
      winner = label;
    } else if (w == best) {
      ++best_count;
    }
  }
  return best_count == 1 ? winner : SentimentLabel::kNeutral;
}

}  // namespace idiomlex
