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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "idiomlex/eval/metrics.h"

namespace idiomlex::eval {

struct ReportCell {
  std::string dataset;
  std::optional<Language> language;  // absent when not grouped by language
  StrategyKind strategy = StrategyKind::kDirect;
  Percentage accuracy;
  std::size_t correct = 0;
  std::size_t total = 0;
};

struct EvaluationReport {
  // Sorted by dataset, language (zh before en), strategy.
  std::vector<ReportCell> cells;
  // Per strategy: mean over that strategy's populated cells.
  std::map<StrategyKind, Percentage> averages;
  std::size_t skipped_unlabeled = 0;

  const ReportCell* find(std::string_view dataset, std::optional<Language> language,
                         StrategyKind strategy) const;
};

struct Grouping {
  bool by_language = true;
};

// Sorts the cells and fills the averages. Exposed so existing tables can
// be re-averaged from their cell values.
EvaluationReport report_from_cells(std::vector<ReportCell> cells);

// Accuracy per (dataset, language, strategy) plus the Avg. column. Records
// without gold are counted in skipped_unlabeled. Throws kEmptyInput when no
// labeled record is left.
EvaluationReport group_report(std::span<const EvaluationRecord> records,
                              const Grouping& grouping = {});

enum class ReportFormat { kCsv, kMarkdown };

std::optional<ReportFormat> report_format_from_string(std::string_view s);

// CSV: header dataset,language,strategy,accuracy; one row per cell, then one
// "Avg." row per strategy. Markdown: strategies as rows in report order,
// (dataset, language) columns, Avg. last, "-" for an empty cell.
std::string render_report(const EvaluationReport& report, ReportFormat format);

}  // namespace idiomlex::eval
