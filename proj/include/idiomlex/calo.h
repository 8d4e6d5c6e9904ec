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
#include <span>
#include <string_view>

#include "idiomlex/lexicon.h"

namespace idiomlex {

// Coarse CALO category -> polarity. The default is
//   joy, good -> positive; anger, sadness, fear, disgust -> negative;
//   surprise -> neutral.
class PolarityTable {
 public:
  static PolarityTable defaults();

  // Parses "coarse = label" lines ('#' comments allowed), applied on top of
  // the defaults. Throws Error{kConfigInvalid}.
  static PolarityTable parse(std::string_view text);

  SentimentLabel polarity(CoarseEmotion coarse) const {
    return table_[static_cast<std::size_t>(coarse)];
  }
  void set(CoarseEmotion coarse, SentimentLabel label) {
    table_[static_cast<std::size_t>(coarse)] = label;
  }

 private:
  std::array<SentimentLabel, kCoarseEmotionCount> table_{};
};

// Intensity-weighted majority polarity: sums intensities per polarity and
// returns the largest; any tie for the maximum yields neutral.
// Throws Error{kEmptyAnnotation} on an empty list.
SentimentLabel calo_to_sentiment(
    std::span<const EmotionAnnotation> emotions,
    const PolarityTable& table = PolarityTable::defaults());

}  // namespace idiomlex
