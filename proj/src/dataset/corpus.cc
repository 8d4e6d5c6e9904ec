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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "idiomlex/dataset.h"
#include "idiomlex/error.h"
#include "idiomlex/jsonl.h"
#include "idiomlex/text.h"

namespace idiomlex::dataset {

std::string_view to_string(SplitName split) {
  switch (split) {
    case SplitName::kTrain: return "train";
    case SplitName::kDev: return "dev";
    case SplitName::kTest: return "test";
    case SplitName::kUnlabelled: return "unlabelled";
  }
  return "train";
}

std::optional<SplitName> split_from_string(std::string_view s) {
  const std::string lower = text::ascii_lower(text::trim(s));
  if (lower == "unlabeled") return SplitName::kUnlabelled;
  for (SplitName split : kAllSplits) {
    if (lower == to_string(split)) return split;
  }
  return std::nullopt;
}

bool entry_less(const DatasetEntry& a, const DatasetEntry& b) {
  if (a.idiom.language != b.idiom.language) {
    return a.idiom.language < b.idiom.language;
  }
  if (a.idiom.surface != b.idiom.surface) return a.idiom.surface < b.idiom.surface;
  return a.passage.id < b.passage.id;
}

std::vector<CorpusDocument> read_corpus(const std::filesystem::path& path,
                                        Language language, std::string source) {
  const std::string stem = path.stem().string();
  if (source.empty()) source = stem;
  std::vector<CorpusDocument> docs;
  const std::string ext = text::ascii_lower(path.extension().string());
  if (ext == ".jsonl" || ext == ".json") {
    jsonl::for_each_line(path, [&](const nlohmann::json& j, std::size_t line) {
      if (!j.is_object() || !j.contains("text") || !j["text"].is_string()) {
        throw Error(ErrorCode::kMalformedLine, "corpus record needs string 'text'");
      }
      CorpusDocument doc;
      doc.text = std::string(text::trim(j["text"].get<std::string>()));
      if (doc.text.empty()) {
        throw Error(ErrorCode::kMalformedLine, "corpus 'text' is empty");
      }
      if (j.contains("id") && j["id"].is_string()) {
        doc.id = j["id"].get<std::string>();
      } else if (j.contains("id") && j["id"].is_number_integer()) {
        doc.id = std::to_string(j["id"].get<long long>());
      } else {
        doc.id = stem + ":" + std::to_string(line);
      }
      doc.language = language;
      doc.source = source;
      docs.push_back(std::move(doc));
    });
    return docs;
  }

  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = text::trim(line);
    if (body.empty()) continue;
    char id[32];
    std::snprintf(id, sizeof id, "%08zu", line_no);
    docs.push_back({stem + ":" + id, std::string(body), language, source});
  }
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "read failed: " + path.string());
  return docs;
}

nlohmann::json entry_to_json(const DatasetEntry& entry) {
  return {{"idiom", idiom_to_json(entry.idiom)},
          {"passage",
           {{"id", entry.passage.id},
            {"text", entry.passage.text},
            {"language", to_string(entry.passage.language)},
            {"source", entry.passage.source}}},
          {"split", to_string(entry.split)}};
}

DatasetEntry entry_from_json(const nlohmann::json& j) {
  const auto bad = [](const std::string& why) {
    throw Error(ErrorCode::kMalformedLine, why);
  };
  if (!j.is_object() || !j.contains("idiom") || !j.contains("passage") ||
      !j.contains("split")) {
    bad("dataset entry needs idiom, passage and split");
  }
  DatasetEntry entry;
  entry.idiom = idiom_from_json(j["idiom"]);
  const auto& p = j["passage"];
  if (!p.is_object() || !p.contains("id") || !p.contains("text") ||
      !p.contains("language") || !p["id"].is_string() || !p["text"].is_string() ||
      !p["language"].is_string()) {
    bad("passage needs string id, text and language");
  }
  entry.passage.id = p["id"].get<std::string>();
  entry.passage.text = p["text"].get<std::string>();
  if (entry.passage.text.empty()) bad("passage text is empty");
  const auto lang = language_from_string(p["language"].get<std::string>());
  if (!lang) bad("unknown passage language");
  entry.passage.language = *lang;
  if (p.contains("source") && p["source"].is_string()) {
    entry.passage.source = p["source"].get<std::string>();
  }
  if (!j["split"].is_string()) bad("split must be a string");
  const auto split = split_from_string(j["split"].get<std::string>());
  if (!split) bad("unknown split '" + j["split"].get<std::string>() + "'");
  entry.split = *split;

  if (entry.passage.language != entry.idiom.language) {
    bad("idiom and passage languages differ");
  }
  if ((entry.split == SplitName::kUnlabelled) == entry.idiom.labeled()) {
    bad(entry.split == SplitName::kUnlabelled
            ? "unlabelled entry carries a gold sentiment"
            : "labeled split entry lacks a gold sentiment");
  }
  return entry;
}

void write_dataset(std::span<const DatasetEntry> entries,
                   const std::filesystem::path& path) {
  std::string out;
  for (const auto& e : entries) {
    out += jsonl::dump(entry_to_json(e));
    out += '\n';
  }
  text::write_file_atomic(path, out);
}

std::vector<DatasetEntry> read_dataset(const std::filesystem::path& path) {
  std::vector<DatasetEntry> entries;
  jsonl::for_each_line(path, [&](const nlohmann::json& j, std::size_t) {
    entries.push_back(entry_from_json(j));
  });
  return entries;
}

}  // namespace idiomlex::dataset
