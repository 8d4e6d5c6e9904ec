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

#include <algorithm>
#include <cctype>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "idiomlex/calo.h"
#include "idiomlex/error.h"
#include "idiomlex/jsonl.h"
#include "idiomlex/lexicon.h"
#include "idiomlex/rng.h"
#include "idiomlex/sentiment_parser.h"
#include "idiomlex/strategy.h"
#include "idiomlex/text.h"
#include "test_util.h"

namespace idiomlex {
namespace {

using L = SentimentLabel;

EmotionAnnotation ann(CoarseEmotion c, int intensity) {
  // First fine code listed for the coarse category.
  for (const FineEmotion& f : calo_fine_emotions()) {
    if (f.coarse == c) return EmotionAnnotation::make(c, f.code, intensity);
  }
  throw std::logic_error("no fine code");
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an idiomlex::Error";
  return ErrorCode::kInvalidArgument;
}

TEST(Labels, RoundTripNames) {
  for (L l : kAllLabels) EXPECT_EQ(label_from_string(to_string(l)), l);
  EXPECT_EQ(label_from_string("POSITIVE"), L::kPositive);
  EXPECT_FALSE(label_from_string("mixed"));
  EXPECT_EQ(language_from_string("ZH"), Language::kZh);
  EXPECT_FALSE(language_from_string("fr"));
  for (StrategyKind k : kAllStrategies) EXPECT_EQ(strategy_from_string(to_string(k)), k);
  EXPECT_EQ(display_name(StrategyKind::kDirect), "Direct Inquiry");
  EXPECT_EQ(display_name(StrategyKind::kDualCoTs), "DualCoTs");
}

TEST(Errors, NamesRoundTrip) {
  for (int i = 0; i <= static_cast<int>(ErrorCode::kConfigInvalid); ++i) {
    const auto code = static_cast<ErrorCode>(i);
    EXPECT_EQ(error_code_from_name(error_code_name(code)), code);
  }
  EXPECT_EQ(error_code_name(ErrorCode::kNoVotes), "NoVotes");
}

// ---------------------------------------------------------------------------
// CALO

TEST(Calo, FineTableHas21CodesOver7Categories) {
  const auto table = calo_fine_emotions();
  EXPECT_EQ(table.size(), 21u);
  std::map<CoarseEmotion, int> per;
  for (const auto& f : table) ++per[f.coarse];
  EXPECT_EQ(per.size(), 7u);
  EXPECT_EQ(find_fine_emotion("ND")->coarse, CoarseEmotion::kDisgust);
  EXPECT_EQ(coarse_emotion_from_string("恶"), CoarseEmotion::kDisgust);
  EXPECT_EQ(coarse_emotion_from_string("joy"), CoarseEmotion::kJoy);
}

TEST(Calo, AnnotationValidation) {
  EXPECT_EQ(code_of([] { EmotionAnnotation::make(CoarseEmotion::kJoy, "PA", 4); }),
            ErrorCode::kInvalidArgument);
  // PA belongs to joy, not anger.
  EXPECT_EQ(code_of([] { EmotionAnnotation::make(CoarseEmotion::kAnger, "PA", 5); }),
            ErrorCode::kInvalidArgument);
  for (int i : {1, 3, 5, 7, 9}) {
    EXPECT_NO_THROW(EmotionAnnotation::make(CoarseEmotion::kJoy, "PA", i));
  }
}

TEST(Calo, Examples) {
  std::vector<EmotionAnnotation> a = {ann(CoarseEmotion::kGood, 5)};
  EXPECT_EQ(calo_to_sentiment(a), L::kPositive);
  a = {ann(CoarseEmotion::kDisgust, 7), ann(CoarseEmotion::kSadness, 5)};
  EXPECT_EQ(calo_to_sentiment(a), L::kNegative);
  a = {ann(CoarseEmotion::kJoy, 5), ann(CoarseEmotion::kDisgust, 5)};
  EXPECT_EQ(calo_to_sentiment(a), L::kNeutral);
  a = {ann(CoarseEmotion::kSurprise, 3), ann(CoarseEmotion::kJoy, 7)};
  EXPECT_EQ(calo_to_sentiment(a), L::kPositive);
  EXPECT_EQ(code_of([] { calo_to_sentiment({}); }), ErrorCode::kEmptyAnnotation);
}

// Reference: hand-written table and summation, no shared code with the
// library beyond the enum.
L oracle_polarity(CoarseEmotion c) {
  switch (c) {
    case CoarseEmotion::kJoy:
    case CoarseEmotion::kGood:
      return L::kPositive;
    case CoarseEmotion::kSurprise:
      return L::kNeutral;
    default:
      return L::kNegative;
  }
}

L oracle_calo(const std::vector<EmotionAnnotation>& list) {
  int pos = 0, neg = 0, neu = 0;
  for (const auto& e : list) {
    switch (oracle_polarity(e.coarse())) {
      case L::kPositive: pos += e.intensity(); break;
      case L::kNegative: neg += e.intensity(); break;
      case L::kNeutral: neu += e.intensity(); break;
    }
  }
  const int best = std::max({pos, neg, neu});
  const int leaders = (pos == best) + (neg == best) + (neu == best);
  if (leaders > 1) return L::kNeutral;
  return pos == best ? L::kPositive : neg == best ? L::kNegative : L::kNeutral;
}

TEST(Calo, MatchesSummationOracleOnAllSmallMultisets) {
  std::vector<EmotionAnnotation> atoms;
  for (std::size_t c = 0; c < kCoarseEmotionCount; ++c) {
    for (int i : {1, 5, 9}) atoms.push_back(ann(static_cast<CoarseEmotion>(c), i));
  }
  const std::size_t n = atoms.size();
  std::size_t checked = 0;
  // Multisets of size 1..3 as non-decreasing index tuples.
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<EmotionAnnotation> one = {atoms[a]};
    EXPECT_EQ(calo_to_sentiment(one), oracle_calo(one));
    ++checked;
    for (std::size_t b = a; b < n; ++b) {
      std::vector<EmotionAnnotation> two = {atoms[a], atoms[b]};
      EXPECT_EQ(calo_to_sentiment(two), oracle_calo(two));
      ++checked;
      for (std::size_t c = b; c < n; ++c) {
        std::vector<EmotionAnnotation> three = {atoms[a], atoms[b], atoms[c]};
        const L expected = oracle_calo(three);
        ASSERT_EQ(calo_to_sentiment(three), expected);
        std::vector<EmotionAnnotation> perm = {atoms[c], atoms[a], atoms[b]};
        ASSERT_EQ(calo_to_sentiment(perm), expected);
        ++checked;
      }
    }
  }
  // C(21,1) + C(22,2) + C(23,3)
  EXPECT_EQ(checked, 21u + 231u + 1771u);
}

TEST(Calo, PermutationInvariantOnRandomLists) {
  SeededRng rng(99);
  for (int round = 0; round < 500; ++round) {
    std::vector<EmotionAnnotation> list;
    const int len = 1 + static_cast<int>(rng.uniform_below(8));
    for (int i = 0; i < len; ++i) {
      const auto c = static_cast<CoarseEmotion>(rng.uniform_below(7));
      const int intensity = 1 + 2 * static_cast<int>(rng.uniform_below(5));
      list.push_back(ann(c, intensity));
    }
    const L before = calo_to_sentiment(list);
    rng.shuffle(std::span<EmotionAnnotation>(list));
    ASSERT_EQ(calo_to_sentiment(list), before);
    ASSERT_EQ(before, oracle_calo(list));
  }
}

TEST(Calo, PolarityTableOverrides) {
  const auto t = PolarityTable::parse("# surprise reads as good news\nsurprise = positive\n");
  std::vector<EmotionAnnotation> a = {ann(CoarseEmotion::kSurprise, 3)};
  EXPECT_EQ(calo_to_sentiment(a, t), L::kPositive);
  EXPECT_EQ(calo_to_sentiment(a), L::kNeutral);
  EXPECT_EQ(code_of([] { PolarityTable::parse("surprise = happy"); }), ErrorCode::kConfigInvalid);
  EXPECT_EQ(code_of([] { PolarityTable::parse("wonder = positive"); }), ErrorCode::kConfigInvalid);
}

// ---------------------------------------------------------------------------
// Lexicon records

TEST(IdiomJson, RoundTrip) {
  IdiomEntry e;
  e.surface = "如花似玉";
  e.language = Language::kZh;
  e.gold_sentiment = L::kPositive;
  e.emotions = {ann(CoarseEmotion::kGood, 7)};
  e.source = "calo";
  EXPECT_EQ(idiom_from_json(idiom_to_json(e)), e);
}

TEST(IdiomJson, Rejects) {
  using nlohmann::json;
  EXPECT_EQ(code_of([] { idiom_from_json(json{{"surface", "  "}, {"language", "zh"}}); }),
            ErrorCode::kMalformedLine);
  EXPECT_EQ(code_of([] { idiom_from_json(json{{"surface", "x"}, {"language", "fr"}}); }),
            ErrorCode::kMalformedLine);
  EXPECT_EQ(code_of([] {
              idiom_from_json(json{{"surface", "x"}, {"language", "en"}, {"sentiment", "mixed"}});
            }),
            ErrorCode::kMalformedLine);
}

// ---------------------------------------------------------------------------
// Label parsing

TEST(Parser, SpecExamples) {
  EXPECT_EQ(parse_sentiment_label("The sentiment is positive.", Language::kEn).label, L::kPositive);
  EXPECT_EQ(parse_sentiment_label("这个成语表达中性情感。", Language::kZh).label, L::kNeutral);
  const auto last = parse_sentiment_label(
      "While it may seem negative, overall the idiom conveys a positive sentiment.", Language::kEn);
  EXPECT_EQ(last.label, L::kPositive);
  EXPECT_EQ(last.confidence_rule, "last-match");
  EXPECT_EQ(code_of([] { parse_sentiment_label("I cannot determine the meaning.", Language::kEn); }),
            ErrorCode::kUnparseable);
  EXPECT_EQ(code_of([] { parse_sentiment_label("   ", Language::kEn); }), ErrorCode::kUnparseable);
}

TEST(Parser, MatchedSpanIsSubstring) {
  const std::string r = "Overall, the tone is NEGATIVE here.";
  const auto p = parse_sentiment_label(r, Language::kEn);
  EXPECT_EQ(p.matched_span, "NEGATIVE");
  EXPECT_NE(r.find(p.matched_span), std::string::npos);
}

TEST(Parser, WordBoundaries) {
  // "nonpositive" and "neutralize" are not keywords.
  EXPECT_FALSE(try_parse_sentiment_label("nonpositive values neutralize it", Language::kEn));
  // EN replies are not scanned for Chinese keywords.
  EXPECT_FALSE(try_parse_sentiment_label("积极", Language::kEn));
}

TEST(Parser, MixedIsUnparseable) {
  EXPECT_FALSE(try_parse_sentiment_label("It is positive in places but overall mixed.",
                                         Language::kEn));
  EXPECT_FALSE(try_parse_sentiment_label("褒贬不一", Language::kZh));
}

struct CorpusRow {
  std::string text;
  Language language;
  std::string expected;
};

std::vector<CorpusRow> load_parse_corpus() {
  std::vector<CorpusRow> rows;
  jsonl::for_each_line(testing::source_path("data/fixtures/parse_corpus.jsonl"),
                       [&](const nlohmann::json& j, std::size_t) {
                         rows.push_back({j.at("text").get<std::string>(),
                                         *language_from_string(j.at("language").get<std::string>()),
                                         j.at("expected").get<std::string>()});
                       });
  return rows;
}

TEST(Parser, BundledCorpus) {
  const auto rows = load_parse_corpus();
  ASSERT_EQ(rows.size(), 100u);
  std::size_t zh = 0, unparseable = 0;
  for (const auto& row : rows) {
    zh += row.language == Language::kZh;
    const auto got = try_parse_sentiment_label(row.text, row.language);
    if (row.expected == "unparseable") {
      ++unparseable;
      EXPECT_FALSE(got) << row.text << " parsed as " << to_string(got->label);
    } else {
      ASSERT_TRUE(got) << row.text;
      EXPECT_EQ(to_string(got->label), row.expected) << row.text;
    }
  }
  EXPECT_EQ(zh, 50u);
  EXPECT_GE(unparseable, 10u);
}

// Random wrapper text that contains no keyword, negator or list separator.
std::string filler(SeededRng& rng) {
  static const std::vector<std::string> words = {
      "the", "idiom", "here", "reads", "as", "overall", "in", "this", "sentence",
      "sentiment", "tone", "label", "answer", "is", "quite", "clearly", "I", "think"};
  std::string out;
  const int n = static_cast<int>(rng.uniform_below(6));
  for (int i = 0; i < n; ++i) {
    if (!out.empty()) out += ' ';
    out += words[rng.uniform_below(words.size())];
  }
  return out;
}

TEST(Parser, SingleKeywordIsAlwaysFound) {
  SeededRng rng(7);
  const std::map<L, std::vector<std::string>> en = {
      {L::kPositive, {"positive"}}, {L::kNegative, {"negative"}}, {L::kNeutral, {"neutral"}}};
  const std::map<L, std::vector<std::string>> zh = {
      {L::kPositive, {"积极", "正面", "褒义"}},
      {L::kNegative, {"消极", "负面", "贬义"}},
      {L::kNeutral, {"中性", "中立"}}};
  for (int round = 0; round < 2000; ++round) {
    const L label = kAllLabels[rng.uniform_below(3)];
    const bool chinese = rng.uniform_below(2) == 0;
    const auto& pool = chinese ? zh.at(label) : en.at(label);
    const std::string kw = pool[rng.uniform_below(pool.size())];
    const std::string sep = chinese ? "，" : " ";
    const std::string r = filler(rng) + sep + kw + (rng.uniform_below(2) ? "." : sep + filler(rng));
    const auto got = try_parse_sentiment_label(r, chinese ? Language::kZh : Language::kEn);
    ASSERT_TRUE(got) << r;
    ASSERT_EQ(got->label, label) << r;
  }
}

TEST(Parser, EnglishCaseInvariance) {
  SeededRng rng(11);
  const auto rows = load_parse_corpus();
  for (const auto& row : rows) {
    if (row.language != Language::kEn) continue;
    const auto base = try_parse_sentiment_label(row.text, Language::kEn);
    for (int round = 0; round < 20; ++round) {
      std::string mutated = row.text;
      for (char& c : mutated) {
        if (std::isalpha(static_cast<unsigned char>(c)) && rng.uniform_below(2)) {
          c = std::isupper(static_cast<unsigned char>(c))
                  ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
                  : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        }
      }
      const auto got = try_parse_sentiment_label(mutated, Language::kEn);
      ASSERT_EQ(got.has_value(), base.has_value()) << mutated;
      if (got) ASSERT_EQ(got->label, base->label) << mutated;
    }
  }
}

// ---------------------------------------------------------------------------
// Small utilities

TEST(Text, Utf8SafeTruncation) {
  EXPECT_EQ(text::truncate_utf8("积极的", 4), "积");
  EXPECT_EQ(text::utf8_codepoints("a积b").size(), 3u);
  EXPECT_EQ(text::trim("  x \n"), "x");
}

TEST(Rng, DeterministicAndSalted) {
  SeededRng a(5), b(5);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(derive_seed(1, "x"), derive_seed(1, "y"));
  EXPECT_NE(derive_seed(1, "x"), derive_seed(2, "x"));
  EXPECT_EQ(derive_seed(3, "abc"), derive_seed(3, "abc"));
  SeededRng r(1);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 7000; ++i) ++hits[r.uniform_below(7)];
  for (int h : hits) EXPECT_GT(h, 800);
}

}  // namespace
}  // namespace idiomlex
