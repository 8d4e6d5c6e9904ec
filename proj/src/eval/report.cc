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

#include "idiomlex/eval/report.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "idiomlex/error.h"
#include "idiomlex/eval/csv.h"

namespace idiomlex::eval {

namespace {

// zh < en < none, the usual left-to-right column order.
int language_rank(const std::optional<Language>& l) {
  return l ? static_cast<int>(*l) : 2;
}

auto cell_key(const ReportCell& c) {
  return std::make_tuple(c.dataset, language_rank(c.language), static_cast<int>(c.strategy));
}

std::string language_text(const std::optional<Language>& l) {
  return l ? std::string(to_string(*l)) : "";
}

std::string column_title(const std::string& dataset, const std::optional<Language>& l) {
  if (!l) return dataset;
  std::string lang(to_string(*l));
  std::transform(lang.begin(), lang.end(), lang.begin(),
                 [](char c) { return static_cast<char>(c - 'a' + 'A'); });
  return dataset + " " + lang;
}

}  // namespace

const ReportCell* EvaluationReport::find(std::string_view dataset,
                                         std::optional<Language> language,
                                         StrategyKind strategy) const {
  for (const ReportCell& c : cells) {
    if (c.dataset == dataset && c.language == language && c.strategy == strategy) return &c;
  }
  return nullptr;
}

EvaluationReport report_from_cells(std::vector<ReportCell> cells) {
  EvaluationReport report;
  std::sort(cells.begin(), cells.end(),
            [](const ReportCell& a, const ReportCell& b) { return cell_key(a) < cell_key(b); });
  std::map<StrategyKind, std::vector<Percentage>> by_strategy;
  for (const ReportCell& c : cells) by_strategy[c.strategy].push_back(c.accuracy);
  for (const auto& [strategy, values] : by_strategy) report.averages[strategy] = mean(values);
  report.cells = std::move(cells);
  return report;
}

EvaluationReport group_report(std::span<const EvaluationRecord> records,
                              const Grouping& grouping) {
  using Key = std::tuple<std::string, int, int>;
  std::map<Key, ReportCell> cells;
  std::size_t skipped = 0;
  for (const EvaluationRecord& r : records) {
    if (!r.gold) {
      ++skipped;
      continue;
    }
    ReportCell proto;
    proto.dataset = r.dataset_tag;
    if (grouping.by_language) proto.language = r.language;
    proto.strategy = r.strategy;
    auto [it, inserted] = cells.try_emplace(cell_key(proto), proto);
    ReportCell& cell = it->second;
    ++cell.total;
    if (r.predicted && *r.predicted == *r.gold) ++cell.correct;
  }
  if (cells.empty()) throw Error(ErrorCode::kEmptyInput, "no labeled evaluation records");
  std::vector<ReportCell> out;
  for (auto& [key, cell] : cells) {
    cell.accuracy = Percentage::from_fraction(static_cast<std::int64_t>(cell.correct),
                                              static_cast<std::int64_t>(cell.total));
    out.push_back(cell);
  }
  EvaluationReport report = report_from_cells(std::move(out));
  report.skipped_unlabeled = skipped;
  return report;
}

std::optional<ReportFormat> report_format_from_string(std::string_view s) {
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "markdown" || s == "md") return ReportFormat::kMarkdown;
  return std::nullopt;
}

std::string render_report(const EvaluationReport& report, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string out = "dataset,language,strategy,accuracy\n";
    for (const ReportCell& c : report.cells) {
      out += csv::format_row({c.dataset, language_text(c.language),
                              std::string(display_name(c.strategy)), c.accuracy.str()});
    }
    for (StrategyKind s : kAllStrategies) {
      const auto it = report.averages.find(s);
      if (it == report.averages.end()) continue;
      out += csv::format_row({"Avg.", "", std::string(display_name(s)), it->second.str()});
    }
    return out;
  }

  std::vector<std::pair<std::string, std::optional<Language>>> columns;
  for (const ReportCell& c : report.cells) {
    const std::pair<std::string, std::optional<Language>> col{c.dataset, c.language};
    if (std::find(columns.begin(), columns.end(), col) == columns.end()) columns.push_back(col);
  }
  std::string out = "| Method |";
  std::string rule = "|---|";
  for (const auto& [dataset, lang] : columns) {
    out += " " + column_title(dataset, lang) + " |";
    rule += "---:|";
  }
  out += " Avg. |\n";
  rule += "---:|\n";
  out += rule;
  for (StrategyKind s : kAllStrategies) {
    const auto avg = report.averages.find(s);
    if (avg == report.averages.end()) continue;
    out += "| " + std::string(display_name(s)) + " |";
    for (const auto& [dataset, lang] : columns) {
      const ReportCell* c = report.find(dataset, lang, s);
      out += " " + (c ? c->accuracy.str() : std::string("-")) + " |";
    }
    out += " " + avg->second.str() + " |\n";
  }
  return out;
}

}  // namespace idiomlex::eval
