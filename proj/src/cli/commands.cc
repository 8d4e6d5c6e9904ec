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

#include "idiomlex/cli/commands.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "idiomlex/chains/runner.h"
#include "idiomlex/dataset.h"
#include "idiomlex/error.h"
#include "idiomlex/eval/annotation.h"
#include "idiomlex/eval/report.h"
#include "idiomlex/jsonl.h"
#include "idiomlex/llm/cache.h"
#include "idiomlex/llm/http_backend.h"
#include "idiomlex/llm/replay.h"
#include "idiomlex/text.h"

#ifndef IDIOMLEX_TEMPLATE_DIR
#define IDIOMLEX_TEMPLATE_DIR "templates"
#endif

namespace idiomlex::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kDefaultKs = "1,4,8,16,all";

struct Globals {
  std::uint64_t seed = 0;
  std::size_t workers = 4;
  std::string lang = "all";
  std::string split = "all";
  std::string k;
};

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorCode::kConfigInvalid, message);
}

std::optional<Language> lang_filter(const Globals& g) {
  if (g.lang == "all" || g.lang.empty()) return std::nullopt;
  const auto l = language_from_string(g.lang);
  if (!l) config_error("--lang must be zh, en or all, got '" + g.lang + "'");
  return l;
}

std::optional<dataset::SplitName> split_filter(const Globals& g) {
  if (g.split == "all" || g.split.empty()) return std::nullopt;
  const auto s = dataset::split_from_string(g.split);
  if (!s) config_error("--split must be train, dev, test, unlabelled or all, got '" + g.split + "'");
  return s;
}

std::vector<std::optional<std::size_t>> k_list(const Globals& g) {
  try {
    return dataset::parse_k_list(g.k.empty() ? kDefaultKs : g.k);
  } catch (const Error& e) {
    config_error(std::string("--k: ") + e.what());
  }
}

std::string k_name(const std::optional<std::size_t>& k) {
  return k ? std::to_string(*k) : "all";
}

void warn(std::ostream& err, const std::string& message) {
  err << jsonl::dump({{"warning", message}}) << '\n';
}

// ---------------------------------------------------------------------------
// build-dataset / stats

struct BuildOptions {
  std::vector<std::string> lexicons;
  std::vector<std::string> zh_corpora;
  std::vector<std::string> en_corpora;
  std::string source_priority;
  std::string polarity_file;
  bool no_derive = false;
  std::string ratios = "0.6,0.2,0.2";
  bool proper_noun_wildcard = false;
  std::string out;
};

dataset::SplitRatios parse_ratios(const std::string& s) {
  const auto parts = text::split(s, ',');
  if (parts.size() != 3) config_error("--ratios needs three comma-separated numbers");
  double v[3];
  for (int i = 0; i < 3; ++i) {
    try {
      std::size_t used = 0;
      const std::string p(text::trim(parts[static_cast<std::size_t>(i)]));
      v[i] = std::stod(p, &used);
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      config_error("--ratios: not a number: '" + parts[static_cast<std::size_t>(i)] + "'");
    }
  }
  return {v[0], v[1], v[2]};
}

nlohmann::json idiom_with_split(const IdiomEntry& idiom, dataset::SplitName split) {
  nlohmann::json j = idiom_to_json(idiom);
  j["split"] = to_string(split);
  return j;
}

std::string stats_csv(const dataset::DatasetStats& stats, const Globals& g) {
  const auto lang = lang_filter(g);
  const auto split = split_filter(g);
  dataset::DatasetStats filtered;
  for (const auto& c : stats.cells) {
    if (lang && c.language != *lang) continue;
    if (split && c.split != *split) continue;
    filtered.cells.push_back(c);
  }
  return filtered.to_csv();
}

int cmd_build_dataset(const BuildOptions& o, const Globals& g, std::ostream& out,
                      std::ostream& err) {
  const dataset::SplitRatios ratios = parse_ratios(o.ratios);
  dataset::LexiconOptions lex;
  if (!o.source_priority.empty()) {
    for (const auto& s : text::split(o.source_priority, ',')) {
      lex.source_priority.emplace_back(text::trim(s));
    }
  }
  lex.derive_from_emotions = !o.no_derive;
  if (!o.polarity_file.empty()) {
    lex.polarity = PolarityTable::parse(text::read_file(o.polarity_file));
  }
  std::vector<fs::path> lexicon_paths(o.lexicons.begin(), o.lexicons.end());
  dataset::LexiconLoad load = dataset::ingest_lexicons(lexicon_paths, lex);
  for (const auto& w : load.warnings) warn(err, w);

  const auto lang = lang_filter(g);
  std::vector<IdiomEntry> idioms;
  for (auto& e : load.entries) {
    if (!lang || e.language == *lang) idioms.push_back(std::move(e));
  }

  std::vector<dataset::CorpusDocument> corpus;
  const auto add_corpus = [&](const std::vector<std::string>& paths, Language language) {
    if (lang && language != *lang) return;
    for (const auto& p : paths) {
      auto docs = dataset::read_corpus(p, language, fs::path(p).stem().string());
      corpus.insert(corpus.end(), std::make_move_iterator(docs.begin()),
                    std::make_move_iterator(docs.end()));
    }
  };
  add_corpus(o.zh_corpora, Language::kZh);
  add_corpus(o.en_corpora, Language::kEn);

  const auto splits = dataset::assign_splits(idioms, ratios, g.seed);
  dataset::PronounOptions popts;
  popts.proper_noun_wildcard = o.proper_noun_wildcard;
  const auto entries = dataset::build_entries(idioms, corpus, splits, g.workers, popts);

  const fs::path dir = o.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoFailure, "cannot create " + dir.string() + ": " + ec.message());

  const auto split = split_filter(g);
  std::string idioms_text;
  for (const auto& idiom : idioms) {
    const auto s = splits.at(dataset::key_of(idiom));
    if (split && s != *split) continue;
    idioms_text += jsonl::dump(idiom_with_split(idiom, s)) + '\n';
  }
  text::write_file_atomic(dir / "idioms.jsonl", idioms_text);

  const auto ks = k_list(g);
  for (const auto& k : ks) {
    auto sampled = dataset::balance_sample(entries, {k, g.seed});
    if (split) {
      std::erase_if(sampled, [&](const dataset::DatasetEntry& e) { return e.split != *split; });
    }
    dataset::write_dataset(sampled, dir / ("dataset_k" + k_name(k) + ".jsonl"));
  }
  const std::string csv = stats_csv(dataset::compute_stats(entries, ks, g.seed), g);
  text::write_file_atomic(dir / "stats.csv", csv);
  out << csv;
  return 0;
}

int cmd_stats(const std::string& dataset_path, const Globals& g, std::ostream& out) {
  const auto entries = dataset::read_dataset(dataset_path);
  out << stats_csv(dataset::compute_stats(entries, k_list(g), g.seed), g);
  return 0;
}

// ---------------------------------------------------------------------------
// run

struct RunOptions {
  std::string strategy = "dualcots";
  std::string backend = "replay";
  std::string fixture;
  std::string cache_dir;
  std::string templates = IDIOMLEX_TEMPLATE_DIR;
  std::string input;
  std::vector<std::string> adhoc_idioms;
  std::string transcripts;
  std::string records;
  std::string dataset_tag;
  std::string model = "gpt-3.5-turbo";
  std::string base_url = "https://api.openai.com/v1";
  int timeout = 60;
  double rpm = 60;
  int retries = 4;
  int samples_per_chain = 5;
  std::string resample_mode = "judge-items";
  double gen_temperature = 0.7;
  double judge_temperature = 0.0;
  int gen_max_tokens = 512;
  int judge_max_tokens = 128;
  bool sequential_chains = false;
  std::size_t limit = 0;
  std::string record_fixture;
};

// Idioms to run, in a stable order, each with its first passage if any.
std::vector<chains::RunItem> load_run_items(const RunOptions& o, const Globals& g) {
  const auto lang = lang_filter(g);
  const auto split = split_filter(g);
  std::vector<chains::RunItem> items;

  if (!o.adhoc_idioms.empty()) {
    if (!lang) config_error("--idiom needs --lang zh or --lang en");
    for (const auto& s : o.adhoc_idioms) {
      IdiomEntry e;
      e.surface = std::string(text::trim(s));
      e.language = *lang;
      if (e.surface.empty()) config_error("--idiom is empty");
      items.push_back({e, std::nullopt});
    }
    return items;
  }
  if (o.input.empty()) config_error("run needs --input or --idiom");

  // Dataset rows carry a passage; lexicon rows (optionally with a split)
  // do not. Mixing both in one file is an error.
  std::vector<dataset::DatasetEntry> rows;
  std::vector<std::pair<IdiomEntry, std::optional<dataset::SplitName>>> idioms;
  jsonl::for_each_line(o.input, [&](const nlohmann::json& j, std::size_t) {
    if (j.is_object() && j.contains("passage")) {
      rows.push_back(dataset::entry_from_json(j));
    } else {
      std::optional<dataset::SplitName> s;
      if (j.is_object() && j.contains("split") && j["split"].is_string()) {
        s = dataset::split_from_string(j["split"].get<std::string>());
        if (!s) throw Error(ErrorCode::kMalformedLine, "unknown split");
      }
      idioms.emplace_back(idiom_from_json(j), s);
    }
  });
  if (!rows.empty() && !idioms.empty()) {
    config_error(o.input + " mixes dataset rows and lexicon rows");
  }

  if (!rows.empty()) {
    if (!g.k.empty()) {
      const auto ks = k_list(g);
      if (ks.size() != 1) config_error("run takes a single --k value");
      rows = dataset::balance_sample(rows, {ks.front(), g.seed});
    }
    std::sort(rows.begin(), rows.end(), dataset::entry_less);
    std::set<dataset::IdiomKey> seen;
    for (const auto& r : rows) {
      if (lang && r.idiom.language != *lang) continue;
      if (split && r.split != *split) continue;
      if (!seen.insert(dataset::key_of(r.idiom)).second) continue;
      items.push_back({r.idiom, r.passage});
    }
  } else {
    std::set<dataset::IdiomKey> seen;
    for (const auto& [idiom, s] : idioms) {
      if (lang && idiom.language != *lang) continue;
      if (split && (!s || *s != *split)) continue;
      if (!seen.insert(dataset::key_of(idiom)).second) {
        throw Error(ErrorCode::kInvalidArgument,
                    "duplicate idiom '" + idiom.surface + "' in " + o.input);
      }
      items.push_back({idiom, std::nullopt});
    }
  }
  if (o.limit > 0 && items.size() > o.limit) items.resize(o.limit);
  return items;
}

int cmd_run(const RunOptions& o, const Globals& g, std::ostream& out, std::ostream& err) {
  const auto strategy = strategy_from_string(o.strategy);
  if (!strategy) config_error("unknown --strategy '" + o.strategy + "'");
  const auto resample = chains::resample_mode_from_string(o.resample_mode);
  if (!resample) config_error("--resample-mode must be judge-items or resample");
  if (o.samples_per_chain < 1) config_error("--samples-per-chain must be at least 1");

  // Fail fast on configuration before reading inputs or templates.
  std::shared_ptr<llm::ChatBackend> base;
  if (o.backend == "replay") {
    if (o.fixture.empty()) config_error("replay backend needs --fixture");
  } else if (o.backend == "live") {
    llm::HttpConfig http;
    http.base_url = o.base_url;
    http.api_key = llm::api_key_from_env();
    http.timeout = std::chrono::seconds(o.timeout);
    http.retry.max_retries = o.retries;
    http.requests_per_minute = o.rpm;
    base = std::make_shared<llm::HttpBackend>(http);
  } else {
    config_error("--backend must be replay or live");
  }

  const auto templates = chains::PromptTemplateSet::load(o.templates);
  const auto items = load_run_items(o, g);
  if (items.empty()) throw Error(ErrorCode::kEmptyInput, "no idioms selected for the run");
  for (const auto& item : items) {
    if (!templates.has_language(item.idiom.language)) {
      throw Error(ErrorCode::kTemplateError,
                  "no templates for language " + std::string(to_string(item.idiom.language)));
    }
  }
  if (!base) base = llm::ReplayBackend::load(o.fixture);

  auto counting = std::make_shared<llm::CountingBackend>(base);
  std::shared_ptr<llm::ChatBackend> top = counting;
  std::shared_ptr<llm::CachingBackend> caching;
  if (!o.cache_dir.empty()) {
    caching = std::make_shared<llm::CachingBackend>(
        counting, std::make_shared<llm::ResponseCache>(o.cache_dir));
    top = caching;
  }
  std::shared_ptr<llm::RecordingBackend> recorder;
  if (!o.record_fixture.empty()) {
    recorder = std::make_shared<llm::RecordingBackend>(top);
    top = recorder;
  }

  chains::ChainOptions copts;
  copts.model = o.model;
  copts.generation_temperature = o.gen_temperature;
  copts.judge_temperature = o.judge_temperature;
  copts.generation_max_tokens = o.gen_max_tokens;
  copts.judge_max_tokens = o.judge_max_tokens;
  copts.samples_per_chain = o.samples_per_chain;
  copts.resample_mode = *resample;
  copts.parallel_chains = !o.sequential_chains;
  const chains::ChainContext ctx{*top, templates, copts};

  const auto transcripts = chains::run_batch(
      items, *strategy, ctx, g.workers, [&](std::size_t, const chains::ChainTranscript& t) {
        if (t.failure) {
          err << jsonl::dump({{"idiom", t.idiom.surface},
                              {"language", to_string(t.idiom.language)},
                              {"failure", error_code_name(t.failure->code)},
                              {"message", t.failure->message}})
              << '\n';
        }
      });

  const std::string tag =
      !o.dataset_tag.empty() ? o.dataset_tag
                             : (o.input.empty() ? "adhoc" : fs::path(o.input).stem().string());
  std::vector<eval::EvaluationRecord> records;
  for (const auto& t : transcripts) records.push_back(eval::record_from_transcript(t, tag));

  // Single writer: everything is written after the workers have joined.
  if (!o.transcripts.empty()) chains::write_transcripts(transcripts, o.transcripts);
  if (!o.records.empty()) eval::write_records(records, o.records);
  if (recorder) recorder->write_fixture(o.record_fixture);

  std::size_t failed = 0;
  std::vector<eval::EvaluationRecord> labeled;
  for (std::size_t i = 0; i < transcripts.size(); ++i) {
    if (transcripts[i].failure) ++failed;
    if (records[i].gold) labeled.push_back(records[i]);
  }
  out << "idioms=" << transcripts.size() << " labeled=" << labeled.size() << " failed=" << failed
      << " upstream_calls=" << counting->calls()
      << " cache_hits=" << (caching ? caching->hits() : 0)
      << " http_calls=" << llm::HttpBackend::total_http_calls()
      << " accuracy=" << (labeled.empty() ? std::string("n/a") : eval::accuracy(labeled).str())
      << '\n';
  if (transcripts.size() == 1 && transcripts[0].final_label) {
    out << "final=" << to_string(*transcripts[0].final_label) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate / annotate / cache

int cmd_evaluate(const std::vector<std::string>& paths, const std::string& format_name,
                 bool no_language, const std::string& out_path, const Globals& g,
                 std::ostream& out) {
  const auto format = eval::report_format_from_string(format_name);
  if (!format) config_error("--format must be csv or markdown");
  const auto lang = lang_filter(g);
  std::vector<eval::EvaluationRecord> records;
  for (const auto& p : paths) {
    for (auto& r : eval::read_records(p)) {
      if (!lang || r.language == *lang) records.push_back(std::move(r));
    }
  }
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no evaluation records to report");
  eval::Grouping grouping;
  grouping.by_language = !no_language;
  const std::string rendered = eval::render_report(eval::group_report(records, grouping), *format);
  if (!out_path.empty()) text::write_file_atomic(out_path, rendered);
  out << rendered;
  return 0;
}

int cmd_annotate_export(const std::string& transcripts_path, std::size_t sample_size,
                        const std::string& annotators, const std::string& out_path,
                        const Globals& g, std::ostream& out) {
  auto transcripts = chains::read_transcripts(transcripts_path);
  if (const auto lang = lang_filter(g)) {
    // Keep line numbers pointing into the original file.
    for (auto& t : transcripts) {
      if (t.idiom.language != *lang) t.final_label.reset();
    }
  }
  eval::ExportOptions opts;
  opts.sample_size = sample_size;
  opts.seed = g.seed;
  opts.ref_prefix = fs::path(transcripts_path).filename().string();
  opts.annotators.clear();
  for (const auto& a : text::split(annotators, ',')) {
    if (!text::trim(a).empty()) opts.annotators.emplace_back(text::trim(a));
  }
  const auto sheet = eval::export_annotation_sheet(transcripts, opts);
  eval::write_annotation_sheet(sheet, out_path);
  out << "rows=" << sheet.rows.size() << " idioms=" << sheet.rows.size() / opts.annotators.size()
      << " out=" << out_path << '\n';
  return 0;
}

int cmd_annotate_import(const std::string& sheet_path, std::ostream& out) {
  const auto sheet = eval::import_annotation_sheet(sheet_path);
  const auto s = eval::annotation_accuracy(sheet);
  out << "accuracy=" << s.accuracy.str() << " scored=" << s.scored << " correct=" << s.correct
      << " ties=" << s.ties.size() << " unannotated=" << s.unannotated
      << " agreement=" << (s.agreement ? s.agreement->str() : std::string("n/a"))
      << " agreement_items=" << s.agreement_items << '\n';
  for (const auto& t : s.ties) out << "tie\t" << t << '\n';
  return 0;
}

int cmd_cache(const std::string& action, const std::string& dir, std::ostream& out) {
  llm::ResponseCache cache(dir);
  if (action == "stats") {
    const auto s = cache.stats();
    out << "entries=" << s.entries << " bytes=" << s.bytes << '\n';
  } else if (action == "clear") {
    out << "removed=" << cache.clear() << '\n';
  } else {
    config_error("cache action must be stats or clear");
  }
  return 0;
}

void print_error(std::ostream& err, std::string_view code, std::string_view message) {
  err << jsonl::dump({{"error", code}, {"message", message}}) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Idiom sentiment lexicon expansion with chain-of-thought prompting", "idiomlex"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value file; command-line flags win");

  Globals g;
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--workers", g.workers, "Worker threads")->capture_default_str()
      ->check(CLI::Range(std::size_t{1}, std::size_t{256}));
  app.add_option("--lang", g.lang, "zh, en or all")->capture_default_str();
  app.add_option("--split", g.split, "train, dev, test, unlabelled or all")->capture_default_str();
  app.add_option("--k", g.k, std::string("Passages per idiom, e.g. ") + kDefaultKs);

  BuildOptions build;
  auto* build_cmd = app.add_subcommand("build-dataset", "Merge lexicons, retrieve contexts, split and balance");
  build_cmd->fallthrough();
  build_cmd->add_option("--lexicon", build.lexicons, "Lexicon JSONL (repeatable)")->required();
  build_cmd->add_option("--zh-corpus", build.zh_corpora, "Chinese corpus file (repeatable)");
  build_cmd->add_option("--en-corpus", build.en_corpora, "English corpus file (repeatable)");
  build_cmd->add_option("--source-priority", build.source_priority, "Comma-separated source order for label conflicts");
  build_cmd->add_option("--polarity", build.polarity_file, "CALO coarse emotion -> polarity overrides");
  build_cmd->add_flag("--no-derive", build.no_derive, "Do not derive labels from CALO emotions");
  build_cmd->add_option("--ratios", build.ratios, "train,dev,test")->capture_default_str();
  build_cmd->add_flag("--proper-noun-wildcard", build.proper_noun_wildcard, "Let someone's match any possessive");
  build_cmd->add_option("--out", build.out, "Output directory")->required();

  std::string stats_dataset;
  auto* stats_cmd = app.add_subcommand("stats", "Dataset statistics as CSV");
  stats_cmd->fallthrough();
  stats_cmd->add_option("--dataset", stats_dataset, "Dataset JSONL")->required();

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run an inquiry strategy over idioms");
  run_cmd->fallthrough();
  run_cmd->add_option("--strategy", run.strategy, "direct, usage, idiom, origin, origin-usage, dualcots")->capture_default_str();
  run_cmd->add_option("--backend", run.backend, "replay or live")->capture_default_str();
  run_cmd->add_option("--fixture", run.fixture, "Replay fixture JSONL");
  run_cmd->add_option("--cache-dir", run.cache_dir, "Response cache directory");
  run_cmd->add_option("--templates", run.templates, "Prompt template directory")->capture_default_str();
  run_cmd->add_option("--input", run.input, "Lexicon, idioms or dataset JSONL");
  run_cmd->add_option("--idiom", run.adhoc_idioms, "Ad-hoc idiom (repeatable; needs --lang)");
  run_cmd->add_option("--transcripts", run.transcripts, "Transcript JSONL output");
  run_cmd->add_option("--records", run.records, "Evaluation record JSONL output");
  run_cmd->add_option("--dataset-tag", run.dataset_tag, "Dataset column in reports (default: input stem)");
  run_cmd->add_option("--model", run.model)->capture_default_str();
  run_cmd->add_option("--base-url", run.base_url)->capture_default_str();
  run_cmd->add_option("--timeout", run.timeout, "Seconds per HTTP request")->capture_default_str();
  run_cmd->add_option("--rpm", run.rpm, "Requests per minute (0 = unlimited)")->capture_default_str();
  run_cmd->add_option("--retries", run.retries)->capture_default_str()->check(CLI::Range(0, 20));
  run_cmd->add_option("--samples-per-chain", run.samples_per_chain)->capture_default_str();
  run_cmd->add_option("--resample-mode", run.resample_mode, "judge-items or resample")->capture_default_str();
  run_cmd->add_option("--gen-temperature", run.gen_temperature)->capture_default_str()->check(CLI::Range(0.0, 2.0));
  run_cmd->add_option("--judge-temperature", run.judge_temperature)->capture_default_str()->check(CLI::Range(0.0, 2.0));
  run_cmd->add_option("--gen-max-tokens", run.gen_max_tokens)->capture_default_str()->check(CLI::PositiveNumber);
  run_cmd->add_option("--judge-max-tokens", run.judge_max_tokens)->capture_default_str()->check(CLI::PositiveNumber);
  run_cmd->add_flag("--sequential-chains", run.sequential_chains, "Run DualCoTs chains one after the other");
  run_cmd->add_option("--limit", run.limit, "Only the first N selected idioms");
  run_cmd->add_option("--record-fixture", run.record_fixture, "Save every exchange as a replay fixture");

  std::vector<std::string> eval_records;
  std::string eval_format = "markdown";
  bool eval_no_language = false;
  std::string eval_out;
  auto* eval_cmd = app.add_subcommand("evaluate", "Accuracy report from evaluation records");
  eval_cmd->fallthrough();
  eval_cmd->add_option("--records", eval_records, "Record JSONL (repeatable)")->required();
  eval_cmd->add_option("--format", eval_format, "csv or markdown")->capture_default_str();
  eval_cmd->add_flag("--no-language", eval_no_language, "Do not split cells by language");
  eval_cmd->add_option("--out", eval_out, "Also write the report here");

  std::string export_transcripts;
  std::size_t export_size = 50;
  std::string export_annotators = "a1,a2";
  std::string export_out;
  auto* export_cmd = app.add_subcommand("annotate-export", "Sample unlabeled predictions for annotators");
  export_cmd->fallthrough();
  export_cmd->add_option("--transcripts", export_transcripts)->required();
  export_cmd->add_option("--sample-size", export_size)->capture_default_str();
  export_cmd->add_option("--annotators", export_annotators)->capture_default_str();
  export_cmd->add_option("--out", export_out, "Annotation CSV")->required();

  std::string import_sheet;
  auto* import_cmd = app.add_subcommand("annotate-import", "Score an annotated sheet");
  import_cmd->fallthrough();
  import_cmd->add_option("--sheet", import_sheet)->required();

  std::string cache_action;
  std::string cache_dir;
  auto* cache_cmd = app.add_subcommand("cache", "Inspect or clear the response cache");
  cache_cmd->fallthrough();
  cache_cmd->add_option("action", cache_action, "stats or clear")->required();
  cache_cmd->add_option("--cache-dir", cache_dir)->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("idiomlex");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    print_error(err, error_code_name(ErrorCode::kConfigInvalid), e.what());
    return 1;
  }

  try {
    if (*build_cmd) return cmd_build_dataset(build, g, out, err);
    if (*stats_cmd) return cmd_stats(stats_dataset, g, out);
    if (*run_cmd) return cmd_run(run, g, out, err);
    if (*eval_cmd) return cmd_evaluate(eval_records, eval_format, eval_no_language, eval_out, g, out);
    if (*export_cmd) {
      return cmd_annotate_export(export_transcripts, export_size, export_annotators, export_out, g, out);
    }
    if (*import_cmd) return cmd_annotate_import(import_sheet, out);
    if (*cache_cmd) return cmd_cache(cache_action, cache_dir, out);
  } catch (const Error& e) {
    print_error(err, error_code_name(e.code()), e.what());
    return 1;
  } catch (const fs::filesystem_error& e) {
    print_error(err, error_code_name(ErrorCode::kIoFailure), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error(err, "Internal", e.what());
    return 1;
  }
  print_error(err, error_code_name(ErrorCode::kConfigInvalid), "no subcommand");
  return 1;
}

}  // namespace idiomlex::cli
