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

#include "idiomlex/eval/annotation.h"

#include <algorithm>
#include <map>
#include <set>

#include "idiomlex/error.h"
#include "idiomlex/eval/csv.h"
#include "idiomlex/rng.h"
#include "idiomlex/text.h"

namespace idiomlex::eval {

namespace {

using IdiomKey = std::pair<Language, std::string>;

std::string describe(const IdiomKey& k) {
  return "'" + k.second + "' (" + std::string(to_string(k.first)) + ")";
}

}  // namespace

AnnotationSheet export_annotation_sheet(std::span<const chains::ChainTranscript> transcripts,
                                        const ExportOptions& options) {
  if (options.annotators.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "at least one annotator id is required");
  }
  // Candidate -> 1-based line of its transcript.
  std::map<IdiomKey, std::size_t> candidates;
  for (std::size_t i = 0; i < transcripts.size(); ++i) {
    const auto& t = transcripts[i];
    if (t.idiom.labeled() || !t.final_label) continue;
    candidates.emplace(IdiomKey{t.idiom.language, t.idiom.surface}, i);
  }
  if (candidates.empty()) {
    throw Error(ErrorCode::kEmptyInput, "no successful transcripts for unlabeled idioms");
  }
  std::vector<const std::pair<const IdiomKey, std::size_t>*> pool;
  for (const auto& kv : candidates) pool.push_back(&kv);
  SeededRng rng(derive_seed(options.seed, "annotate"));
  rng.shuffle(std::span(pool));
  pool.resize(std::min(pool.size(), options.sample_size));
  std::sort(pool.begin(), pool.end(), [](auto* a, auto* b) { return a->first < b->first; });

  std::vector<std::string> annotators = options.annotators;
  std::sort(annotators.begin(), annotators.end());
  AnnotationSheet sheet;
  for (const auto* entry : pool) {
    const auto& t = transcripts[entry->second];
    for (const std::string& a : annotators) {
      sheet.rows.push_back({t.idiom.surface, t.idiom.language, *t.final_label,
                            options.ref_prefix + ":" + std::to_string(entry->second + 1), a,
                            std::nullopt});
    }
  }
  return sheet;
}

std::string sheet_to_csv(const AnnotationSheet& sheet) {
  std::string out = std::string(kAnnotationHeader) + "\n";
  for (const AnnotationRow& r : sheet.rows) {
    out += csv::format_row({r.idiom, std::string(to_string(r.language)),
                            std::string(to_string(r.predicted)), r.transcript_ref,
                            r.annotator_id,
                            r.annotator_label ? std::string(to_string(*r.annotator_label))
                                              : std::string()});
  }
  return out;
}

AnnotationSheet sheet_from_csv(std::string_view text) {
  // Tolerate a UTF-8 byte order mark left by spreadsheet tools.
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  const auto rows = csv::parse(text);
  if (rows.empty() || text::join(rows[0], ",") != kAnnotationHeader) {
    throw Error(ErrorCode::kMalformedLine,
                std::string("annotation sheet must start with the header ") + kAnnotationHeader);
  }
  AnnotationSheet sheet;
  std::set<std::tuple<Language, std::string, std::string>> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::string where = "row " + std::to_string(i + 1) + ": ";
    if (row.size() != 6) {
      throw Error(ErrorCode::kMalformedLine,
                  where + "expected 6 fields, got " + std::to_string(row.size()));
    }
    AnnotationRow r;
    r.idiom = row[0];
    const auto lang = language_from_string(text::trim(row[1]));
    if (!lang) throw Error(ErrorCode::kMalformedLine, where + "bad language '" + row[1] + "'");
    r.language = *lang;
    const auto predicted = label_from_string(text::trim(row[2]));
    if (!predicted) {
      throw Error(ErrorCode::kBadLabel, where + "bad predicted label '" + row[2] + "'");
    }
    r.predicted = *predicted;
    r.transcript_ref = row[3];
    r.annotator_id = std::string(text::trim(row[4]));
    if (r.annotator_id.empty()) {
      throw Error(ErrorCode::kMalformedLine, where + "missing annotator id");
    }
    const std::string_view label = text::trim(row[5]);
    if (!label.empty()) {
      const auto parsed = label_from_string(label);
      if (!parsed) {
        throw Error(ErrorCode::kBadLabel,
                    where + "annotator label must be positive, negative or neutral, got '" +
                        std::string(label) + "'");
      }
      r.annotator_label = *parsed;
    }
    if (!seen.emplace(r.language, r.idiom, r.annotator_id).second) {
      throw Error(ErrorCode::kMalformedLine,
                  where + "second row for " + describe({r.language, r.idiom}) +
                      " by annotator " + r.annotator_id);
    }
    sheet.rows.push_back(std::move(r));
  }
  return sheet;
}

void write_annotation_sheet(const AnnotationSheet& sheet, const std::filesystem::path& path) {
  text::write_file_atomic(path, sheet_to_csv(sheet));
}

AnnotationSheet import_annotation_sheet(const std::filesystem::path& path) {
  try {
    return sheet_from_csv(text::read_file(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIoFailure) throw;
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

AnnotationSummary annotation_accuracy(const AnnotationSheet& sheet) {
  if (sheet.rows.empty()) throw Error(ErrorCode::kEmptyInput, "annotation sheet is empty");

  struct Item {
    SentimentLabel predicted;
    std::map<std::string, SentimentLabel> labels;  // annotator -> label
  };
  std::map<IdiomKey, Item> items;
  std::set<std::string> annotators;
  for (const AnnotationRow& r : sheet.rows) {
    annotators.insert(r.annotator_id);
    auto [it, inserted] = items.try_emplace({r.language, r.idiom}, Item{r.predicted, {}});
    if (!inserted && it->second.predicted != r.predicted) {
      throw Error(ErrorCode::kMalformedLine,
                  "rows for " + describe(it->first) + " disagree on the prediction");
    }
    if (r.annotator_label) it->second.labels[r.annotator_id] = *r.annotator_label;
  }

  AnnotationSummary s;
  for (const auto& [key, item] : items) {
    if (item.labels.empty()) {
      ++s.unannotated;
      continue;
    }
    std::array<int, 3> counts{};
    for (const auto& [a, l] : item.labels) ++counts[static_cast<std::size_t>(l)];
    const int best = *std::max_element(counts.begin(), counts.end());
    if (std::count(counts.begin(), counts.end(), best) > 1) {
      s.ties.push_back(key.second);
      continue;
    }
    const auto reference = static_cast<SentimentLabel>(
        std::find(counts.begin(), counts.end(), best) - counts.begin());
    ++s.scored;
    if (reference == item.predicted) ++s.correct;
  }

  if (annotators.size() >= 2) {
    const std::string& a = *annotators.begin();
    const std::string& b = *std::next(annotators.begin());
    std::vector<SentimentLabel> la;
    std::vector<SentimentLabel> lb;
    for (const auto& [key, item] : items) {
      const auto ia = item.labels.find(a);
      const auto ib = item.labels.find(b);
      if (ia == item.labels.end() || ib == item.labels.end()) continue;
      la.push_back(ia->second);
      lb.push_back(ib->second);
    }
    if (!la.empty()) {
      s.agreement = percentage_agreement(la, lb);
      s.agreement_items = la.size();
    }
  }

  if (s.scored == 0) {
    throw Error(ErrorCode::kEmptyInput, "no idiom has a majority annotator label");
  }
  s.accuracy = Percentage::from_fraction(static_cast<std::int64_t>(s.correct),
                                         static_cast<std::int64_t>(s.scored));
  return s;
}

}  // namespace idiomlex::eval
