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

#include "idiomlex/sentiment_parser.h"

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "idiomlex/error.h"
#include "idiomlex/text.h"

namespace idiomlex {
namespace {

struct Hit {
  std::size_t pos;
  std::size_t len;
  std::optional<SentimentLabel> label;  // nullopt marks a mixed marker
};

struct Keyword {
  std::string_view word;
  SentimentLabel label;
};

constexpr std::array<Keyword, 9> kEnglishKeywords = {{
    {"positive", SentimentLabel::kPositive},
    {"positively", SentimentLabel::kPositive},
    {"positivity", SentimentLabel::kPositive},
    {"negative", SentimentLabel::kNegative},
    {"negatively", SentimentLabel::kNegative},
    {"negativity", SentimentLabel::kNegative},
    {"neutral", SentimentLabel::kNeutral},
    {"neutrally", SentimentLabel::kNeutral},
    {"neutrality", SentimentLabel::kNeutral},
}};

constexpr std::array<std::string_view, 3> kEnglishMixed = {
    "mixed", "ambiguous", "ambivalent"};

const std::set<std::string_view> kEnglishNegators = {
    "not",    "no",     "never", "non",     "isn't",   "aren't", "wasn't",
    "weren't", "doesn't", "don't", "didn't", "hardly", "neither", "nor",
    "without", "cannot", "can't", "nothing", "isnt",   "doesnt",  "dont"};

// Words that may sit between a negator and the keyword ("not at all
// positive", "not a negative").
const std::set<std::string_view> kEnglishFillers = {
    "very",     "really", "particularly", "entirely", "necessarily",
    "strictly", "purely", "overly",       "too",      "so",
    "that",     "at",     "all",          "exactly",  "inherently",
    "a",        "an",     "especially",   "clearly",  "simply",
    "just",     "quite",  "truly",        "be",       "any"};

constexpr std::array<Keyword, 8> kChineseKeywords = {{
    {"积极", SentimentLabel::kPositive},
    {"正面", SentimentLabel::kPositive},
    {"褒义", SentimentLabel::kPositive},
    {"消极", SentimentLabel::kNegative},
    {"负面", SentimentLabel::kNegative},
    {"贬义", SentimentLabel::kNegative},
    {"中性", SentimentLabel::kNeutral},
    {"中立", SentimentLabel::kNeutral},
}};

constexpr std::array<std::string_view, 3> kChineseMixed = {
    "褒贬不一", "好坏参半", "喜忧参半"};

constexpr std::array<std::string_view, 5> kChineseNegators = {
    "不", "非", "没有", "并非", "无"};

constexpr std::array<std::string_view, 12> kChineseFillers = {
    "是", "很", "太", "十分", "特别", "那么", "算", "属于", "完全", "那样",
    "任何", "什么"};

// Separators that join the members of an options list.
const std::set<std::string> kListGaps = {
    ",",  "/",    "|",   "、",  "，",   "or",   "and", ",or",
    ",and", "或", "或者", "还是", "和",  "与",   "及",  "以及",
    "、或", "，或", "/或", ";",   "；"};

bool has_clause_break(std::string_view gap) {
  return gap.find_first_of(".!?;:,\n") != std::string_view::npos ||
         gap.find("。") != std::string_view::npos ||
         gap.find("，") != std::string_view::npos;
}

bool english_negated(std::string_view s, const std::vector<text::WordToken>& tokens,
                     std::size_t index) {
  std::size_t i = index;
  for (int steps = 0; steps < 4 && i > 0; ++steps) {
    const text::WordToken& prev = tokens[i - 1];
    const std::string_view gap =
        s.substr(prev.pos + prev.len, tokens[i].pos - prev.pos - prev.len);
    if (has_clause_break(gap)) return false;
    if (kEnglishNegators.contains(prev.norm)) return true;
    if (!kEnglishFillers.contains(prev.norm)) return false;
    --i;
  }
  return false;
}

void collect_english(std::string_view s, std::vector<Hit>& hits,
                     bool& negation_seen) {
  const std::vector<text::WordToken> tokens = text::word_tokens(s);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const text::WordToken& t = tokens[i];
    for (const Keyword& kw : kEnglishKeywords) {
      if (t.norm != kw.word) continue;
      if (english_negated(s, tokens, i)) {
        negation_seen = true;
      } else {
        hits.push_back({t.pos, t.len, kw.label});
      }
    }
    for (std::string_view marker : kEnglishMixed) {
      if (t.norm == marker) hits.push_back({t.pos, t.len, std::nullopt});
    }
  }
}

bool chinese_negated(std::string_view before) {
  for (int steps = 0; steps < 3; ++steps) {
    bool stripped = false;
    for (std::string_view filler : kChineseFillers) {
      if (before.ends_with(filler)) {
        before.remove_suffix(filler.size());
        stripped = true;
        break;
      }
    }
    for (std::string_view neg : kChineseNegators) {
      if (before.ends_with(neg)) return true;
    }
    if (!stripped) return false;
  }
  return false;
}

void collect_chinese(std::string_view s, std::vector<Hit>& hits,
                     bool& negation_seen) {
  for (const Keyword& kw : kChineseKeywords) {
    for (std::size_t pos = s.find(kw.word); pos != std::string_view::npos;
         pos = s.find(kw.word, pos + kw.word.size())) {
      if (chinese_negated(s.substr(0, pos))) {
        negation_seen = true;
      } else {
        hits.push_back({pos, kw.word.size(), kw.label});
      }
    }
  }
  for (std::string_view marker : kChineseMixed) {
    for (std::size_t pos = s.find(marker); pos != std::string_view::npos;
         pos = s.find(marker, pos + marker.size())) {
      hits.push_back({pos, marker.size(), std::nullopt});
    }
  }
}

std::string normalized_gap(std::string_view gap) {
  static constexpr std::array<std::string_view, 12> kDrop = {
      " ", "\t", "\"", "'", "“", "”", "「", "」", "(", ")", "（", "）"};
  std::string out = text::ascii_lower(gap);
  for (std::string_view d : kDrop) text::replace_all(out, d, "");
  return out;
}

// Removes runs of two or more hits with differing labels that are joined
// only by list separators. Returns true if anything was removed.
bool drop_option_lists(std::string_view s, std::vector<Hit>& hits) {
  std::vector<bool> drop(hits.size(), false);
  std::size_t i = 0;
  while (i < hits.size()) {
    std::size_t j = i;
    while (j + 1 < hits.size() && hits[j].label && hits[j + 1].label) {
      const std::size_t gap_start = hits[j].pos + hits[j].len;
      if (hits[j + 1].pos < gap_start) break;
      const std::string gap =
          normalized_gap(s.substr(gap_start, hits[j + 1].pos - gap_start));
      if (!kListGaps.contains(gap)) break;
      ++j;
    }
    if (j > i) {
      std::set<SentimentLabel> distinct;
      for (std::size_t k = i; k <= j; ++k) distinct.insert(*hits[k].label);
      if (distinct.size() > 1) {
        for (std::size_t k = i; k <= j; ++k) drop[k] = true;
      }
    }
    i = j + 1;
  }
  std::vector<Hit> kept;
  for (std::size_t k = 0; k < hits.size(); ++k) {
    if (!drop[k]) kept.push_back(hits[k]);
  }
  const bool changed = kept.size() != hits.size();
  hits = std::move(kept);
  return changed;
}

}  // namespace

std::optional<ParsedLabel> try_parse_sentiment_label(std::string_view response,
                                                     Language language) {
  std::vector<Hit> hits;
  bool negation_seen = false;
  collect_english(response, hits, negation_seen);
  if (language == Language::kZh) collect_chinese(response, hits, negation_seen);
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
    return a.pos != b.pos ? a.pos < b.pos : a.len > b.len;
  });
  const bool options_dropped = drop_option_lists(response, hits);
  if (hits.empty() || !hits.back().label) return std::nullopt;

  std::set<SentimentLabel> distinct;
  for (const Hit& h : hits) {
    if (h.label) distinct.insert(*h.label);
  }
  ParsedLabel parsed;
  parsed.label = *hits.back().label;
  parsed.matched_span =
      std::string(response.substr(hits.back().pos, hits.back().len));
  parsed.confidence_rule = distinct.size() > 1 ? "last-match" : "keyword";
  if (negation_seen) parsed.confidence_rule += "+negation";
  if (options_dropped) parsed.confidence_rule += "+options";
  return parsed;
}

ParsedLabel parse_sentiment_label(std::string_view response,
                                  Language language) {
  if (text::trim(response).empty()) {
    throw Error(ErrorCode::kUnparseable, "empty response");
  }
  auto parsed = try_parse_sentiment_label(response, language);
  if (!parsed) {
    std::string excerpt(text::truncate_utf8(response, 80));
    throw Error(ErrorCode::kUnparseable,
                "no sentiment keyword in response: " + excerpt);
  }
  return *std::move(parsed);
}

}  // namespace idiomlex
