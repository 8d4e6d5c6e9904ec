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

#include "idiomlex/eval/metrics.h"

#include <cstdlib>

#include "idiomlex/error.h"
#include "idiomlex/jsonl.h"
#include "idiomlex/text.h"

namespace idiomlex::eval {

namespace {

// round(num / den) with halves away from zero; den > 0.
std::int64_t div_round_half_away(std::int64_t num, std::int64_t den) {
  const std::int64_t mag = (2 * std::llabs(num) + den) / (2 * den);
  return num < 0 ? -mag : mag;
}

}  // namespace

Percentage Percentage::from_fraction(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw Error(ErrorCode::kInvalidArgument, "percentage of an empty total");
  return Percentage(div_round_half_away(1000 * num, den));
}

Percentage Percentage::parse(std::string_view s) {
  const std::string_view t = text::trim(s);
  std::int64_t whole = 0;
  std::int64_t tenth = 0;
  std::size_t i = 0;
  const bool negative = !t.empty() && t[0] == '-';
  if (negative) ++i;
  const std::size_t digits_start = i;
  while (i < t.size() && t[i] >= '0' && t[i] <= '9') whole = whole * 10 + (t[i++] - '0');
  bool ok = i > digits_start;
  if (ok && i < t.size() && t[i] == '.') {
    ++i;
    if (i + 1 == t.size() && t[i] >= '0' && t[i] <= '9') {
      tenth = t[i++] - '0';
    } else {
      ok = false;
    }
  }
  if (!ok || i != t.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected a percentage with at most one decimal: " + std::string(t));
  }
  const std::int64_t tenths = whole * 10 + tenth;
  return Percentage(negative ? -tenths : tenths);
}

std::string Percentage::str() const {
  const std::int64_t mag = std::llabs(tenths_);
  return (tenths_ < 0 ? "-" : "") + std::to_string(mag / 10) + "." + std::to_string(mag % 10);
}

Percentage mean(std::span<const Percentage> values) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "mean of no values");
  std::int64_t sum = 0;
  for (const Percentage& v : values) sum += v.tenths();
  return Percentage::from_tenths(div_round_half_away(sum, static_cast<std::int64_t>(values.size())));
}

EvaluationRecord record_from_transcript(const chains::ChainTranscript& t,
                                        std::string dataset_tag) {
  EvaluationRecord r;
  r.idiom = t.idiom.surface;
  r.language = t.idiom.language;
  r.strategy = t.strategy;
  r.predicted = t.final_label;
  r.gold = t.idiom.gold_sentiment;
  r.dataset_tag = std::move(dataset_tag);
  return r;
}

nlohmann::json record_to_json(const EvaluationRecord& r) {
  const auto label = [](const std::optional<SentimentLabel>& l) {
    return l ? nlohmann::json(to_string(*l)) : nlohmann::json(nullptr);
  };
  return {{"idiom", r.idiom},
          {"language", to_string(r.language)},
          {"strategy", to_string(r.strategy)},
          {"predicted", label(r.predicted)},
          {"gold", label(r.gold)},
          {"dataset", r.dataset_tag}};
}

EvaluationRecord record_from_json(const nlohmann::json& j) {
  const auto label = [&](const char* key) -> std::optional<SentimentLabel> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    const auto l = label_from_string(j[key].get<std::string>());
    if (!l) throw Error(ErrorCode::kMalformedLine, std::string("bad ") + key + " label");
    return l;
  };
  try {
    EvaluationRecord r;
    r.idiom = j.at("idiom").get<std::string>();
    const auto lang = language_from_string(j.at("language").get<std::string>());
    const auto strategy = strategy_from_string(j.at("strategy").get<std::string>());
    if (!lang || !strategy) throw Error(ErrorCode::kMalformedLine, "bad language or strategy");
    r.language = *lang;
    r.strategy = *strategy;
    r.predicted = label("predicted");
    r.gold = label("gold");
    r.dataset_tag = j.value("dataset", "");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedLine, std::string("bad evaluation record: ") + e.what());
  }
}

void write_records(std::span<const EvaluationRecord> records, const std::filesystem::path& path) {
  std::string out;
  for (const auto& r : records) out += jsonl::dump(record_to_json(r)) + '\n';
  text::write_file_atomic(path, out);
}

std::vector<EvaluationRecord> read_records(const std::filesystem::path& path) {
  std::vector<EvaluationRecord> out;
  jsonl::for_each_line(path, [&](const nlohmann::json& j, std::size_t) {
    out.push_back(record_from_json(j));
  });
  return out;
}

Percentage accuracy(std::span<const EvaluationRecord> records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no evaluation records");
  std::int64_t correct = 0;
  for (const auto& r : records) {
    if (!r.gold) {
      throw Error(ErrorCode::kInvalidArgument,
                  "record for '" + r.idiom + "' has no gold label");
    }
    if (r.predicted && *r.predicted == *r.gold) ++correct;
  }
  return Percentage::from_fraction(correct, static_cast<std::int64_t>(records.size()));
}

Percentage percentage_agreement(std::span<const SentimentLabel> a,
                                std::span<const SentimentLabel> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "label lists differ in length: " +
                                                std::to_string(a.size()) + " vs " +
                                                std::to_string(b.size()));
  }
  if (a.empty()) throw Error(ErrorCode::kEmptyInput, "no labels to compare");
  std::int64_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return Percentage::from_fraction(same, static_cast<std::int64_t>(a.size()));
}

}  // namespace idiomlex::eval
