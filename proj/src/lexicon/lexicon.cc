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

#include "idiomlex/lexicon.h"

#include <algorithm>

#include "idiomlex/error.h"
#include "idiomlex/text.h"

namespace idiomlex {

std::string_view to_string(SentimentLabel label) {
  switch (label) {
    case SentimentLabel::kPositive: return "positive";
    case SentimentLabel::kNegative: return "negative";
    case SentimentLabel::kNeutral: return "neutral";
  }
  return "neutral";
}

std::optional<SentimentLabel> label_from_string(std::string_view s) {
  const std::string lower = text::ascii_lower(text::trim(s));
  for (SentimentLabel label : kAllLabels) {
    if (lower == to_string(label)) return label;
  }
  return std::nullopt;
}

std::string_view to_string(Language language) {
  return language == Language::kZh ? "zh" : "en";
}

std::optional<Language> language_from_string(std::string_view s) {
  const std::string lower = text::ascii_lower(text::trim(s));
  if (lower == "zh") return Language::kZh;
  if (lower == "en") return Language::kEn;
  return std::nullopt;
}

namespace {

struct CoarseNames {
  CoarseEmotion coarse;
  std::string_view en;
  std::string_view zh;
};

constexpr std::array<CoarseNames, kCoarseEmotionCount> kCoarseNames = {{
    {CoarseEmotion::kJoy, "joy", "乐"},
    {CoarseEmotion::kGood, "good", "好"},
    {CoarseEmotion::kAnger, "anger", "怒"},
    {CoarseEmotion::kSadness, "sadness", "哀"},
    {CoarseEmotion::kFear, "fear", "惧"},
    {CoarseEmotion::kDisgust, "disgust", "恶"},
    {CoarseEmotion::kSurprise, "surprise", "惊"},
}};

constexpr std::array<FineEmotion, 21> kFineEmotions = {{
    {"PA", "快乐", "happiness", CoarseEmotion::kJoy},
    {"PE", "安心", "relief", CoarseEmotion::kJoy},
    {"PD", "尊敬", "respect", CoarseEmotion::kGood},
    {"PH", "赞扬", "praise", CoarseEmotion::kGood},
    {"PG", "相信", "belief", CoarseEmotion::kGood},
    {"PB", "喜爱", "fondness", CoarseEmotion::kGood},
    {"PK", "祝愿", "wish", CoarseEmotion::kGood},
    {"NA", "愤怒", "anger", CoarseEmotion::kAnger},
    {"NB", "悲伤", "sorrow", CoarseEmotion::kSadness},
    {"NJ", "失望", "disappointment", CoarseEmotion::kSadness},
    {"NH", "疚", "guilt", CoarseEmotion::kSadness},
    {"PF", "思", "missing", CoarseEmotion::kSadness},
    {"NI", "慌", "panic", CoarseEmotion::kFear},
    {"NC", "恐惧", "fear", CoarseEmotion::kFear},
    {"NG", "羞", "shame", CoarseEmotion::kFear},
    {"NE", "烦闷", "boredom", CoarseEmotion::kDisgust},
    {"ND", "憎恶", "hate", CoarseEmotion::kDisgust},
    {"NN", "贬责", "blame", CoarseEmotion::kDisgust},
    {"NK", "妒忌", "envy", CoarseEmotion::kDisgust},
    {"NL", "怀疑", "doubt", CoarseEmotion::kDisgust},
    {"PC", "惊奇", "surprise", CoarseEmotion::kSurprise},
}};

}  // namespace

std::string_view to_string(CoarseEmotion coarse) {
  return kCoarseNames[static_cast<std::size_t>(coarse)].en;
}

std::string_view chinese_name(CoarseEmotion coarse) {
  return kCoarseNames[static_cast<std::size_t>(coarse)].zh;
}

std::optional<CoarseEmotion> coarse_emotion_from_string(std::string_view s) {
  const std::string_view trimmed = text::trim(s);
  const std::string lower = text::ascii_lower(trimmed);
  for (const auto& names : kCoarseNames) {
    if (lower == names.en || trimmed == names.zh) return names.coarse;
  }
  return std::nullopt;
}

std::span<const FineEmotion> calo_fine_emotions() { return kFineEmotions; }

const FineEmotion* find_fine_emotion(std::string_view code) {
  const auto it =
      std::find_if(kFineEmotions.begin(), kFineEmotions.end(),
                   [&](const FineEmotion& f) { return f.code == code; });
  return it == kFineEmotions.end() ? nullptr : &*it;
}

EmotionAnnotation EmotionAnnotation::make(CoarseEmotion coarse,
                                          std::string_view fine,
                                          int intensity) {
  if (intensity < 1 || intensity > 9 || intensity % 2 == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "emotion intensity must be one of 1,3,5,7,9, got " +
                    std::to_string(intensity));
  }
  const FineEmotion* info = find_fine_emotion(fine);
  if (info == nullptr) {
    throw Error(ErrorCode::kInvalidArgument,
                "unknown CALO fine category '" + std::string(fine) + "'");
  }
  if (info->coarse != coarse) {
    throw Error(ErrorCode::kInvalidArgument,
                "fine category " + std::string(fine) + " belongs to " +
                    std::string(to_string(info->coarse)) + ", not " +
                    std::string(to_string(coarse)));
  }
  return EmotionAnnotation(coarse, std::string(fine), intensity);
}

nlohmann::json idiom_to_json(const IdiomEntry& entry) {
  nlohmann::json j;
  j["surface"] = entry.surface;
  j["language"] = to_string(entry.language);
  if (entry.gold_sentiment) j["sentiment"] = to_string(*entry.gold_sentiment);
  if (!entry.emotions.empty()) {
    auto& list = j["emotions"] = nlohmann::json::array();
    for (const auto& e : entry.emotions) {
      list.push_back({{"coarse", to_string(e.coarse())},
                      {"fine", e.fine()},
                      {"intensity", e.intensity()}});
    }
  }
  if (!entry.source.empty()) j["source"] = entry.source;
  return j;
}

namespace {

[[noreturn]] void malformed(const std::string& why) {
  throw Error(ErrorCode::kMalformedLine, why);
}

}  // namespace

IdiomEntry idiom_from_json(const nlohmann::json& j) {
  if (!j.is_object()) malformed("idiom record is not a JSON object");
  IdiomEntry entry;
  const auto surface = j.find("surface");
  if (surface == j.end() || !surface->is_string()) {
    malformed("missing string field 'surface'");
  }
  entry.surface = std::string(text::trim(surface->get<std::string>()));
  if (entry.surface.empty()) malformed("'surface' is empty");

  const auto lang = j.find("language");
  if (lang == j.end() || !lang->is_string()) {
    malformed("missing string field 'language'");
  }
  const auto language = language_from_string(lang->get<std::string>());
  if (!language) malformed("unknown language '" + lang->get<std::string>() + "'");
  entry.language = *language;

  if (const auto s = j.find("sentiment"); s != j.end() && !s->is_null()) {
    if (!s->is_string()) malformed("'sentiment' must be a string");
    const auto label = label_from_string(s->get<std::string>());
    if (!label) malformed("unknown sentiment '" + s->get<std::string>() + "'");
    entry.gold_sentiment = label;
  }

  if (const auto e = j.find("emotions"); e != j.end() && !e->is_null()) {
    if (!e->is_array()) malformed("'emotions' must be an array");
    for (const auto& item : *e) {
      if (!item.is_object() || !item.contains("coarse") ||
          !item.contains("fine") || !item.contains("intensity") ||
          !item["coarse"].is_string() || !item["fine"].is_string() ||
          !item["intensity"].is_number_integer()) {
        malformed("emotion needs string coarse, string fine, int intensity");
      }
      const auto coarse =
          coarse_emotion_from_string(item["coarse"].get<std::string>());
      if (!coarse) {
        malformed("unknown coarse emotion '" +
                  item["coarse"].get<std::string>() + "'");
      }
      try {
        entry.emotions.push_back(EmotionAnnotation::make(
            *coarse, item["fine"].get<std::string>(),
            item["intensity"].get<int>()));
      } catch (const Error& err) {
        malformed(err.what());
      }
    }
  }

  if (const auto src = j.find("source"); src != j.end() && !src->is_null()) {
    if (!src->is_string()) malformed("'source' must be a string");
    entry.source = src->get<std::string>();
  }
  return entry;
}

}  // namespace idiomlex
