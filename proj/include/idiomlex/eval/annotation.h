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

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "idiomlex/chains/transcript.h"
#include "idiomlex/eval/metrics.h"

namespace idiomlex::eval {

struct AnnotationRow {
  std::string idiom;
  Language language = Language::kZh;
  SentimentLabel predicted = SentimentLabel::kNeutral;
  std::string transcript_ref;  // "<transcript file>:<line>"
  std::string annotator_id;
  std::optional<SentimentLabel> annotator_label;  // empty until annotated

  bool operator==(const AnnotationRow&) const = default;
};

// One row per (idiom, annotator).
struct AnnotationSheet {
  std::vector<AnnotationRow> rows;

  bool operator==(const AnnotationSheet&) const = default;
};

inline constexpr const char* kAnnotationHeader =
    "idiom,language,predicted,transcript_ref,annotator_id,annotator_label";

struct ExportOptions {
  std::size_t sample_size = 50;
  std::uint64_t seed = 0;
  std::vector<std::string> annotators = {"a1", "a2"};
  std::string ref_prefix = "transcripts.jsonl";
};

// Seeded uniform sample (without replacement) of transcripts for unlabeled
// idioms that produced a label. Rows are ordered by language, surface,
// annotator. The draw depends on the set of candidates, not on file order.
// Throws kEmptyInput when there is no candidate.
AnnotationSheet export_annotation_sheet(std::span<const chains::ChainTranscript> transcripts,
                                        const ExportOptions& options);

std::string sheet_to_csv(const AnnotationSheet& sheet);
// Throws kMalformedLine (header, shape, duplicates), kBadLabel.
AnnotationSheet sheet_from_csv(std::string_view text);

void write_annotation_sheet(const AnnotationSheet& sheet, const std::filesystem::path& path);
AnnotationSheet import_annotation_sheet(const std::filesystem::path& path);

struct AnnotationSummary {
  Percentage accuracy;           // predicted vs majority reference
  std::size_t scored = 0;        // idioms with a majority reference
  std::size_t correct = 0;
  std::vector<std::string> ties;  // idioms needing adjudication
  std::size_t unannotated = 0;   // idioms with no annotator label yet
  // Percentage agreement of the first two annotators (by id order) over
  // idioms both labeled; absent with fewer than two annotators.
  std::optional<Percentage> agreement;
  std::size_t agreement_items = 0;
};

// Majority annotator label per idiom is the reference; tied idioms are
// listed in `ties` and left out of the accuracy. Throws kEmptyInput when the
// sheet is empty or no idiom has a reference.
AnnotationSummary annotation_accuracy(const AnnotationSheet& sheet);

}  // namespace idiomlex::eval
