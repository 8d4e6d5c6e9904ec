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

#include <optional>
#include <string>
#include <string_view>

#include "idiomlex/lexicon.h"

namespace idiomlex {

struct ParsedLabel {
  SentimentLabel label;
  std::string matched_span;     // exact bytes of the response that matched
  std::string confidence_rule;  // "keyword", "last-match", plus modifiers
};

// Extracts a polarity from a free-text model reply.
//
// Keywords: EN positive/negative/neutral (and their -ly/-ity forms), matched
// as whole words, ASCII case-insensitively. ZH 积极/正面/褒义, 消极/负面/贬义,
// 中性/中立 by substring; ZH replies are also scanned for the EN words.
//
// Resolution:
//   * a keyword directly negated ("not negative", "并非消极") is ignored;
//   * an options list ("positive, negative, or neutral") is ignored;
//   * of the remaining matches, the last one in reading order wins;
//   * if the last match is a mixed-sentiment marker ("mixed", "褒贬不一"),
//     the reply is unparseable.
std::optional<ParsedLabel> try_parse_sentiment_label(std::string_view response,
                                                     Language language);

// As above, throwing Error{kUnparseable} when nothing usable matches.
ParsedLabel parse_sentiment_label(std::string_view response, Language language);

}  // namespace idiomlex
