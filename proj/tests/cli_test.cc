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

#include <filesystem>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "idiomlex/chains/transcript.h"
#include "idiomlex/cli/commands.h"
#include "idiomlex/jsonl.h"
#include "idiomlex/llm/backend.h"
#include "idiomlex/text.h"
#include "test_util.h"

namespace idiomlex::cli {
namespace {

namespace fs = std::filesystem;
using testing::slurp;
using testing::source_path;
using testing::spit;
using testing::TempDir;

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string error_code(const Result& r) {
  if (r.err.empty()) return "";
  return nlohmann::json::parse(r.err.substr(0, r.err.find('\n'))).value("error", "");
}

std::string data(const std::string& rel) { return source_path(rel).string(); }

std::vector<std::string> lines_of(const fs::path& p) {
  std::vector<std::string> out;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::vector<std::string> build_args(const fs::path& out, std::uint64_t seed, int k) {
  return {"--seed",
          std::to_string(seed),
          "--k",
          std::to_string(k),
          "build-dataset",
          "--lexicon",
          data("tests/testdata/build/lexicon_zh.jsonl"),
          "--lexicon",
          data("tests/testdata/build/lexicon_en.jsonl"),
          "--zh-corpus",
          data("tests/testdata/build/corpus_zh.txt"),
          "--en-corpus",
          data("tests/testdata/build/corpus_en.txt"),
          "--out",
          out.string()};
}

// Passage count per idiom from a plain scan of the corpus files.
std::size_t scan_count(const std::string& surface, const std::string& language) {
  const auto corpus = lines_of(source_path(language == "zh" ? "tests/testdata/build/corpus_zh.txt"
                                                            : "tests/testdata/build/corpus_en.txt"));
  std::size_t n = 0;
  if (language == "zh") {
    for (const auto& line : corpus) n += line.find(surface) != std::string::npos;
    return n;
  }
  std::string pattern;
  for (char c : surface) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == ' ') {
      pattern += c;
    } else {
      pattern += std::string("\\") + c;
    }
  }
  pattern = std::regex_replace(pattern, std::regex("one\\\\'s"),
                               "(?:one's|my|your|his|her|its|our|their)");
  const std::regex re("\\b" + pattern + "\\b", std::regex::icase);
  for (const auto& line : corpus) n += std::regex_search(line, re);
  return n;
}

TEST(Cli, BuildDatasetStatsFollowMinLaw) {
  TempDir dir;
  for (int k : {1, 4, 8, 16}) {
    const fs::path out = dir / ("k" + std::to_string(k));
    const auto r = cli(build_args(out, 7, k));
    ASSERT_EQ(r.code, 0) << r.err;

    using Cell = std::pair<std::string, std::string>;  // language, split
    std::map<Cell, std::pair<std::size_t, std::size_t>> expected;
    for (const auto& line : lines_of(out / "idioms.jsonl")) {
      const auto j = nlohmann::json::parse(line);
      const std::string lang = j["language"];
      const std::size_t n = scan_count(j["surface"], lang);
      auto& [idioms, entries] = expected[{lang, j["split"]}];
      idioms += n > 0;
      entries += std::min<std::size_t>(k, n);
    }
    const auto rows = lines_of(out / "stats.csv");
    ASSERT_EQ(rows[0], "language,split,k,idioms,entries");
    std::size_t checked = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const auto f = text::split(rows[i], ',');
      ASSERT_EQ(f.size(), 5u);
      EXPECT_EQ(f[2], std::to_string(k));
      const auto& [idioms, entries] = expected[{f[0], f[1]}];
      EXPECT_EQ(f[3], std::to_string(idioms)) << rows[i];
      EXPECT_EQ(f[4], std::to_string(entries)) << rows[i];
      ++checked;
    }
    EXPECT_EQ(checked, expected.size());
    EXPECT_EQ(r.out, slurp(out / "stats.csv"));
  }
}

TEST(Cli, SameSeedSameBytes) {
  TempDir dir;
  ASSERT_EQ(cli(build_args(dir / "a", 11, 4)).code, 0);
  ASSERT_EQ(cli(build_args(dir / "b", 11, 4)).code, 0);
  for (const char* f : {"idioms.jsonl", "dataset_k4.jsonl", "stats.csv"}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
  // The stats command recomputes the same table from the dataset file.
  const auto stats =
      cli({"--k", "4", "stats", "--dataset", (dir / "a" / "dataset_k4.jsonl").string()});
  ASSERT_EQ(stats.code, 0) << stats.err;
  EXPECT_EQ(stats.out, slurp(dir / "a" / "stats.csv"));
}

std::vector<std::string> flip_run(const fs::path& dir, const std::string& tag) {
  return {"run",
          "--backend",
          "replay",
          "--fixture",
          data("data/fixtures/flip/fixture.jsonl"),
          "--input",
          data("data/fixtures/flip/lexicon.jsonl"),
          "--cache-dir",
          (dir / "cache").string(),
          "--transcripts",
          (dir / (tag + ".transcripts.jsonl")).string(),
          "--records",
          (dir / (tag + ".records.jsonl")).string()};
}

TEST(Cli, FlipRunAndWarmCache) {
  TempDir dir;
  const auto cold = cli(flip_run(dir.path(), "cold"));
  ASSERT_EQ(cold.code, 0) << cold.err;
  EXPECT_NE(cold.out.find("upstream_calls=13"), std::string::npos) << cold.out;
  EXPECT_NE(cold.out.find("final=positive"), std::string::npos) << cold.out;

  const auto warm = cli(flip_run(dir.path(), "warm"));
  ASSERT_EQ(warm.code, 0) << warm.err;
  EXPECT_NE(warm.out.find("upstream_calls=0"), std::string::npos) << warm.out;
  EXPECT_NE(warm.out.find("cache_hits=13"), std::string::npos) << warm.out;
  EXPECT_EQ(slurp(dir / "cold.transcripts.jsonl"), slurp(dir / "warm.transcripts.jsonl"));
  EXPECT_EQ(slurp(dir / "cold.records.jsonl"), slurp(dir / "warm.records.jsonl"));

  const auto report = cli({"evaluate", "--records", (dir / "cold.records.jsonl").string(),
                           "--format", "csv"});
  ASSERT_EQ(report.code, 0) << report.err;
  EXPECT_NE(report.out.find("DualCoTs,100.0"), std::string::npos) << report.out;

  const auto stats = cli({"cache", "stats", "--cache-dir", (dir / "cache").string()});
  EXPECT_EQ(stats.out.rfind("entries=13 ", 0), 0u) << stats.out;
  const auto cleared = cli({"cache", "clear", "--cache-dir", (dir / "cache").string()});
  EXPECT_EQ(cleared.out, "removed=13\n");
  EXPECT_EQ(cli({"cache", "stats", "--cache-dir", (dir / "cache").string()}).out.rfind(
                "entries=0 ", 0),
            0u);
}

TEST(Cli, TemplateEditInvalidatesOnlyAffectedStep) {
  TempDir dir;
  ASSERT_EQ(cli(flip_run(dir.path(), "cold")).code, 0);
  fs::copy(source_path("templates"), dir / "templates", fs::copy_options::recursive);
  const fs::path judge = dir / "templates" / "zh" / "dualcots" / "literal_judge.txt";
  spit(judge, slurp(judge) + " ");
  auto args = flip_run(dir.path(), "edited");
  args.push_back("--templates");
  args.push_back((dir / "templates").string());
  const auto r = cli(args);
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(error_code(r), "MissingFixture");
  EXPECT_NE(r.err.find("dualcots/literal_judge"), std::string::npos) << r.err;
}

TEST(Cli, ConfigFileAndFlagOverride) {
  TempDir dir;
  spit(dir / "run.ini", "[run]\nstrategy = \"direct\"\n");
  auto args = flip_run(dir.path(), "cfg");
  args.insert(args.begin(), {"--config", (dir / "run.ini").string()});
  const auto from_file = cli(args);
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  EXPECT_NE(from_file.out.find("upstream_calls=1 "), std::string::npos) << from_file.out;

  args.push_back("--strategy");
  args.push_back("dualcots");
  const auto overridden = cli(args);
  ASSERT_EQ(overridden.code, 0) << overridden.err;
  EXPECT_NE(overridden.out.find("upstream_calls=13"), std::string::npos) << overridden.out;
}

TEST(Cli, ErrorsAreReportedAsJson) {
  TempDir dir;
  spit(dir / "empty.jsonl", "");
  auto r = cli({"evaluate", "--records", (dir / "empty.jsonl").string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(error_code(r), "EmptyInput");
  EXPECT_TRUE(r.out.empty());

  r = cli({"run", "--fixture", data("data/fixtures/flip/fixture.jsonl"), "--input",
           data("data/fixtures/golden/lexicon.jsonl"), "--limit", "2"});
  EXPECT_EQ(error_code(r), "MissingFixture") << r.err;

  r = cli({"run", "--no-such-flag"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(error_code(r), "ConfigInvalid");
  EXPECT_EQ(error_code(cli({"--lang", "fr", "run", "--idiom", "x"})), "ConfigInvalid");
  EXPECT_EQ(error_code(cli({"run", "--strategy", "telepathy", "--input", "x"})),
            "ConfigInvalid");
  EXPECT_EQ(error_code(cli({"build-dataset", "--lexicon", "x", "--ratios", "0.5,0.5",
                            "--out", (dir / "o").string()})),
            "ConfigInvalid");

  const char* saved = std::getenv("IDIOMLEX_API_KEY");
  const std::string keep = saved ? saved : "";
  ::unsetenv("IDIOMLEX_API_KEY");
  r = cli({"run", "--backend", "live", "--input", data("data/fixtures/flip/lexicon.jsonl")});
  EXPECT_EQ(error_code(r), "AuthMissing");
  if (saved) ::setenv("IDIOMLEX_API_KEY", keep.c_str(), 1);
}

TEST(Cli, AnnotationExportAndImport) {
  TempDir dir;
  std::vector<chains::ChainTranscript> transcripts;
  for (int i = 0; i < 12; ++i) {
    chains::ChainTranscript t;
    t.idiom.surface = "idiom" + std::to_string(i);
    t.idiom.language = Language::kEn;
    if (i == 0) t.idiom.gold_sentiment = SentimentLabel::kPositive;
    t.strategy = StrategyKind::kDualCoTs;
    t.final_label = kAllLabels[i % 3];
    transcripts.push_back(t);
  }
  chains::write_transcripts(transcripts, dir / "t.jsonl");
  const fs::path sheet = dir / "sheet.csv";
  auto r = cli({"--seed", "3", "annotate-export", "--transcripts", (dir / "t.jsonl").string(),
                "--sample-size", "5", "--out", sheet.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "rows=10 idioms=5 out=" + sheet.string() + "\n");

  // Annotators copy the prediction, except a2 disagrees on the first idiom.
  auto rows = lines_of(sheet);
  ASSERT_EQ(rows.size(), 11u);
  std::string filled = rows[0] + "\n";
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto f = text::split(rows[i], ',');
    std::string label = f[2];
    if (i == 2) label = label == "neutral" ? "positive" : "neutral";
    filled += rows[i] + label + "\n";
  }
  spit(sheet, filled);
  r = cli({"annotate-import", "--sheet", sheet.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("accuracy=100.0 scored=4 correct=4 ties=1 unannotated=0 "
                        "agreement=80.0 agreement_items=5\n",
                        0),
            0u)
      << r.out;
  EXPECT_NE(r.out.find("tie\t"), std::string::npos);

  spit(sheet, rows[0] + "\nx,en,positive,t.jsonl:1,a1,glad\n");
  EXPECT_EQ(error_code(cli({"annotate-import", "--sheet", sheet.string()})), "BadLabel");
}

}  // namespace
}  // namespace idiomlex::cli
