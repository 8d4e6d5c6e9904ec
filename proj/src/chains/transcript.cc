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

#include "idiomlex/chains/transcript.h"

#include "idiomlex/jsonl.h"
#include "idiomlex/text.h"

namespace idiomlex::chains {

using nlohmann::json;

ChainPrediction ChainPrediction::parsed(SentimentLabel label, std::string raw,
                                        std::vector<std::string> trace, std::string sentence) {
  ChainPrediction p;
  p.label = label;
  p.raw_response = std::move(raw);
  p.step_trace = std::move(trace);
  p.sentence = std::move(sentence);
  return p;
}

ChainPrediction ChainPrediction::failed(std::string reason, std::string raw,
                                        std::vector<std::string> trace, std::string sentence) {
  ChainPrediction p;
  p.parse_error = std::move(reason);
  p.raw_response = std::move(raw);
  p.step_trace = std::move(trace);
  p.sentence = std::move(sentence);
  return p;
}

std::vector<ChainPrediction> ChainTranscript::all_predictions() const {
  std::vector<ChainPrediction> out = predictions;
  out.insert(out.end(), literal_predictions.begin(), literal_predictions.end());
  out.insert(out.end(), etymological_predictions.begin(), etymological_predictions.end());
  return out;
}

namespace {

json optional_string(const std::optional<std::string>& s) {
  return s ? json(*s) : json(nullptr);
}

std::optional<std::string> read_optional_string(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<std::string>();
}

SentimentLabel read_label(const json& j) {
  const auto label = label_from_string(j.get<std::string>());
  if (!label) throw Error(ErrorCode::kMalformedLine, "unknown label " + j.dump());
  return *label;
}

json predictions_to_json(const std::vector<ChainPrediction>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(prediction_to_json(p));
  return out;
}

std::vector<ChainPrediction> predictions_from_json(const json& j) {
  std::vector<ChainPrediction> out;
  for (const auto& p : j) out.push_back(prediction_from_json(p));
  return out;
}

}  // namespace

json prediction_to_json(const ChainPrediction& p) {
  return {{"label", p.label ? json(to_string(*p.label)) : json(nullptr)},
          {"raw_response", p.raw_response},
          {"step_trace", p.step_trace},
          {"parse_error", optional_string(p.parse_error)},
          {"sentence", p.sentence}};
}

ChainPrediction prediction_from_json(const json& j) {
  ChainPrediction p;
  if (!j.at("label").is_null()) p.label = read_label(j["label"]);
  p.raw_response = j.at("raw_response").get<std::string>();
  p.step_trace = j.at("step_trace").get<std::vector<std::string>>();
  p.parse_error = read_optional_string(j, "parse_error");
  p.sentence = j.value("sentence", "");
  if (p.label.has_value() == p.parse_error.has_value()) {
    throw Error(ErrorCode::kMalformedLine, "prediction needs exactly one of label/parse_error");
  }
  return p;
}

json transcript_to_json(const ChainTranscript& t) {
  json exchanges = json::array();
  for (const Exchange& e : t.exchanges) {
    exchanges.push_back({{"request", llm::request_to_json(e.request)},
                         {"response", e.response},
                         {"error", optional_string(e.error)}});
  }
  json tally = json::object();
  for (SentimentLabel l : kAllLabels) tally[std::string(to_string(l))] = t.tally.count(l);
  return {
      {"idiom", idiom_to_json(t.idiom)},
      {"strategy", to_string(t.strategy)},
      {"template_version", t.template_version},
      {"requests_and_responses", exchanges},
      {"origin", optional_string(t.origin)},
      {"context_sentence", optional_string(t.context_sentence)},
      {"context_passage_id", optional_string(t.context_passage_id)},
      {"predictions", predictions_to_json(t.predictions)},
      {"literal_predictions", predictions_to_json(t.literal_predictions)},
      {"etymological_predictions", predictions_to_json(t.etymological_predictions)},
      {"final", t.final_label ? json(to_string(*t.final_label)) : json(nullptr)},
      {"vote_tally", tally},
      {"failure", t.failure ? json{{"code", error_code_name(t.failure->code)},
                                   {"message", t.failure->message}}
                            : json(nullptr)},
  };
}

ChainTranscript transcript_from_json(const json& j) {
  try {
    ChainTranscript t;
    t.idiom = idiom_from_json(j.at("idiom"));
    const auto strategy = strategy_from_string(j.at("strategy").get<std::string>());
    if (!strategy) throw Error(ErrorCode::kMalformedLine, "unknown strategy");
    t.strategy = *strategy;
    t.template_version = j.at("template_version").get<std::string>();
    for (const auto& e : j.at("requests_and_responses")) {
      t.exchanges.push_back({llm::request_from_json(e.at("request")),
                             e.at("response").get<std::string>(),
                             read_optional_string(e, "error")});
    }
    t.origin = read_optional_string(j, "origin");
    t.context_sentence = read_optional_string(j, "context_sentence");
    t.context_passage_id = read_optional_string(j, "context_passage_id");
    t.predictions = predictions_from_json(j.at("predictions"));
    t.literal_predictions = predictions_from_json(j.at("literal_predictions"));
    t.etymological_predictions = predictions_from_json(j.at("etymological_predictions"));
    if (!j.at("final").is_null()) t.final_label = read_label(j["final"]);
    for (SentimentLabel l : kAllLabels) {
      t.tally.counts[static_cast<std::size_t>(l)] =
          j.at("vote_tally").value(std::string(to_string(l)), 0);
    }
    if (!j.at("failure").is_null()) {
      const auto code = error_code_from_name(j["failure"].at("code").get<std::string>());
      if (!code) throw Error(ErrorCode::kMalformedLine, "unknown failure code");
      t.failure = TranscriptFailure{*code, j["failure"].at("message").get<std::string>()};
    }
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedLine, std::string("bad transcript: ") + e.what());
  }
}

std::string transcripts_to_jsonl(const std::vector<ChainTranscript>& transcripts) {
  std::string out;
  for (const auto& t : transcripts) out += jsonl::dump(transcript_to_json(t)) + '\n';
  return out;
}

void write_transcripts(const std::vector<ChainTranscript>& transcripts,
                       const std::filesystem::path& path) {
  text::write_file_atomic(path, transcripts_to_jsonl(transcripts));
}

std::vector<ChainTranscript> read_transcripts(const std::filesystem::path& path) {
  std::vector<ChainTranscript> out;
  jsonl::for_each_line(path, [&](const json& j, std::size_t) {
    out.push_back(transcript_from_json(j));
  });
  return out;
}

}  // namespace idiomlex::chains
