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

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "idiomlex/chains/items.h"
#include "idiomlex/chains/runner.h"
#include "idiomlex/chains/strategies.h"
#include "idiomlex/chains/templates.h"
#include "idiomlex/chains/transcript.h"
#include "idiomlex/chains/voting.h"
#include "idiomlex/error.h"
#include "idiomlex/llm/replay.h"
#include "idiomlex/rng.h"
#include "idiomlex/text.h"
#include "scenario.h"
#include "test_util.h"

namespace idiomlex::chains {
namespace {

using idiomlex::testing::source_path;
using idiomlex::testing::TempDir;
using L = SentimentLabel;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an idiomlex::Error";
  return ErrorCode::kInvalidArgument;
}

IdiomEntry zh_idiom(std::string surface) {
  IdiomEntry e;
  e.surface = std::move(surface);
  e.language = Language::kZh;
  return e;
}

IdiomEntry en_idiom(std::string surface) {
  IdiomEntry e;
  e.surface = std::move(surface);
  e.language = Language::kEn;
  return e;
}

// Templates whose text starts with "<step>|" so a scripted backend can tell
// the steps apart without relying on the shipped wording.
PromptTemplateSet tagged_templates() {
  PromptTemplateSet set;
  for (Language lang : {Language::kZh, Language::kEn}) {
    for (StrategyKind kind : kAllStrategies) {
      for (const StepSpec& step : steps_for(kind)) {
        std::string src = std::string(step.name) + "|";
        for (auto p : step.required) src += "{" + std::string(p) + "}|";
        set.add(lang, kind, step.name, src);
      }
    }
  }
  set.set_version("test-1");
  set.validate();
  return set;
}

std::string step_of(const llm::ChatRequest& r) {
  const std::string& p = r.messages.back().content;
  return p.substr(0, p.find('|'));
}

// Backend that answers through `fn` and logs every request in call order.
class LoggedBackend : public llm::ChatBackend {
 public:
  using Fn = std::function<std::string(const llm::ChatRequest&)>;
  explicit LoggedBackend(Fn fn) : fn_(std::move(fn)) {}

  llm::BackendResponse complete(const llm::ChatRequest& request) override {
    request.validate();
    {
      std::lock_guard lock(mu_);
      log_.push_back(request);
    }
    llm::BackendResponse r;
    r.text = fn_(request);
    r.backend_id = "logged";
    return r;
  }
  std::string id() const override { return "logged"; }

  std::vector<llm::ChatRequest> log() {
    std::lock_guard lock(mu_);
    return log_;
  }

 private:
  Fn fn_;
  std::mutex mu_;
  std::vector<llm::ChatRequest> log_;
};

std::string five_items(const std::string& prefix) {
  std::string out;
  for (int i = 1; i <= 5; ++i) out += std::to_string(i) + ". " + prefix + std::to_string(i) + "\n";
  return out;
}

// Default script: generation steps produce five numbered items, origin
// steps produce text, judgments say `verdict`.
LoggedBackend::Fn script(std::string verdict) {
  return [verdict](const llm::ChatRequest& r) -> std::string {
    const std::string step = step_of(r);
    if (step == "literal_generate" || step == "etym_examples" || step == "generate" ||
        step == "usage") {
      return five_items(step + " sentence ");
    }
    if (step == "etym_origin" || step == "origin") return "An old story.";
    return verdict;
  };
}

// ---------------------------------------------------------------------------
// Templates

TEST(PromptTemplate, ParseAndRender) {
  const auto t = PromptTemplate::parse("Is \"{idiom}\" {{literal}} {sentence}?");
  EXPECT_EQ(t.placeholders(), (std::vector<std::string>{"idiom", "sentence"}));
  EXPECT_EQ(t.render({{"idiom", "如花似玉"}, {"sentence", "x"}}), "Is \"如花似玉\" {literal} x?");
  EXPECT_EQ(code_of([&] { t.render({{"idiom", "a"}}); }), ErrorCode::kTemplateError);
  EXPECT_EQ(code_of([] { PromptTemplate::parse("{idiom"); }), ErrorCode::kTemplateError);
  EXPECT_EQ(code_of([] { PromptTemplate::parse("idiom}"); }), ErrorCode::kTemplateError);
  EXPECT_EQ(code_of([] { PromptTemplate::parse("{bad name}"); }), ErrorCode::kTemplateError);
  // Values are not re-expanded.
  EXPECT_EQ(PromptTemplate::parse("{a}").render({{"a", "{b}"}}), "{b}");
}

TEST(PromptTemplateSet, ValidationCatchesMissingAndUnknownPlaceholders) {
  PromptTemplateSet set = tagged_templates();
  EXPECT_EQ(code_of([&] { set.add(Language::kEn, StrategyKind::kOrigin, "judge", "{idiom} only"); }),
            ErrorCode::kTemplateError);
  EXPECT_EQ(code_of([&] { set.add(Language::kEn, StrategyKind::kDirect, "judge", "{idiom} {origin}"); }),
            ErrorCode::kTemplateError);

  // A language with a step left out fails validation.
  PromptTemplateSet partial;
  partial.add(Language::kEn, StrategyKind::kDirect, "judge", "{idiom}");
  EXPECT_EQ(code_of([&] { partial.validate(); }), ErrorCode::kTemplateError);

  // Optional placeholders are accepted.
  set = tagged_templates();
  set.add(Language::kZh, StrategyKind::kDualCoTs, "literal_judge", "{idiom} {sentence} {examples}");
  EXPECT_NO_THROW(set.validate());

  EXPECT_EQ(code_of([&] { set.add(Language::kZh, StrategyKind::kDirect, "nope", "{idiom}"); }),
            ErrorCode::kTemplateError);
  EXPECT_EQ(code_of([&] { set.get(Language::kZh, StrategyKind::kDirect, "generate"); }),
            ErrorCode::kTemplateError);
}

TEST(PromptTemplateSet, ShippedTemplatesLoad) {
  const auto set = PromptTemplateSet::load(source_path("templates"));
  EXPECT_TRUE(set.has_language(Language::kZh));
  EXPECT_TRUE(set.has_language(Language::kEn));
  EXPECT_FALSE(set.version().empty());
  const std::string p = set.render(Language::kZh, StrategyKind::kDirect, "judge", {{"idiom", "如花似玉"}});
  EXPECT_NE(p.find("如花似玉"), std::string::npos);
}

TEST(PromptTemplateSet, LoadReportsMissingFiles) {
  TempDir dir;
  EXPECT_EQ(code_of([&] { PromptTemplateSet::load(dir.path()); }), ErrorCode::kTemplateError);
  std::filesystem::create_directories(dir / "en/direct");
  testing::spit(dir / "en/direct/judge.txt", "{idiom}?");
  EXPECT_EQ(code_of([&] { PromptTemplateSet::load(dir.path()); }), ErrorCode::kTemplateError);
}

// ---------------------------------------------------------------------------
// Item extraction

TEST(Items, Basics) {
  EXPECT_EQ(extract_numbered_items("1. A\n2. B\n3. C", 3), (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_EQ(extract_numbered_items("A\nB", 5), (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(extract_numbered_items("1. A\n2. B\n3. C", 2), (std::vector<std::string>{"A", "B"}));
  EXPECT_TRUE(extract_numbered_items("  \n\n", 5).empty());
  EXPECT_EQ(extract_numbered_items("1. A 2. B 3. C", 5), (std::vector<std::string>{"A", "B", "C"}));
}

TEST(Items, MixedMarkersMatchHandSegmentation) {
  const std::string reply =
      "Here are five sentences:\n"
      "1. She looked radiant at the wedding.\n"
      "2) \"He finally broke the ice.\"\n"
      "（三）他们在会上一举两得。\n"
      "- **Nobody wanted to spill the beans.**\n"
      "例句5：这件事真是画蛇添足。\n"
      "Hope this helps!";
  const std::vector<std::string> oracle = {
      "She looked radiant at the wedding.", "He finally broke the ice.",
      "他们在会上一举两得。", "Nobody wanted to spill the beans.",
      "这件事真是画蛇添足。"};
  EXPECT_EQ(extract_numbered_items(reply, 5), oracle);
}

TEST(Items, ChineseMarkers) {
  const std::string reply = "一、甲\n二、乙\n３．丙\n（4）丁\n• 戊";
  EXPECT_EQ(extract_numbered_items(reply, 5),
            (std::vector<std::string>{"甲", "乙", "丙", "丁", "戊"}));
  EXPECT_EQ(list_marker_length("12. x"), 4u);
  EXPECT_FALSE(list_marker_length("2024 was a year"));
}

// ---------------------------------------------------------------------------
// Voting

L oracle_winner(int pos, int neg, int neu) {
  const int best = std::max({pos, neg, neu});
  const int leaders = (pos == best) + (neg == best) + (neu == best);
  if (leaders > 1) return L::kNeutral;
  if (pos == best) return L::kPositive;
  if (neg == best) return L::kNegative;
  return L::kNeutral;
}

std::vector<L> expand(int pos, int neg, int neu) {
  std::vector<L> v;
  v.insert(v.end(), pos, L::kPositive);
  v.insert(v.end(), neg, L::kNegative);
  v.insert(v.end(), neu, L::kNeutral);
  return v;
}

TEST(Voting, SpecExamples) {
  EXPECT_EQ(tally_labels(expand(10, 0, 0)).first, L::kPositive);
  EXPECT_EQ(tally_labels(expand(5, 4, 1)).first, L::kPositive);
  EXPECT_EQ(tally_labels(expand(4, 4, 2)).first, L::kNeutral);
  EXPECT_EQ(tally_labels(expand(3, 1, 3)).first, L::kNeutral);
  EXPECT_EQ(tally_labels(expand(0, 4, 4)).first, L::kNeutral);
  EXPECT_EQ(code_of([] { tally_labels({}); }), ErrorCode::kNoVotes);
}

TEST(Voting, AllSixtySixMultisetsOfTen) {
  int checked = 0;
  for (int pos = 0; pos <= 10; ++pos) {
    for (int neg = 0; pos + neg <= 10; ++neg) {
      const int neu = 10 - pos - neg;
      const auto [winner, tally] = tally_labels(expand(pos, neg, neu));
      EXPECT_EQ(winner, oracle_winner(pos, neg, neu)) << pos << "/" << neg << "/" << neu;
      EXPECT_EQ(tally.count(L::kPositive), pos);
      EXPECT_EQ(tally.count(L::kNegative), neg);
      EXPECT_EQ(tally.total(), 10);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 66);
}

TEST(Voting, UnparsedSlotsAreSkipped) {
  std::vector<ChainPrediction> p = {
      ChainPrediction::parsed(L::kNegative, "negative", {"j"}),
      ChainPrediction::failed("Unparseable", "hmm", {"j"}),
      ChainPrediction::failed("Unparseable", "hmm", {"j"}),
  };
  const auto [winner, tally] = tally_votes(p);
  EXPECT_EQ(winner, L::kNegative);
  EXPECT_EQ(tally.total(), 1);
  p.erase(p.begin());
  EXPECT_EQ(code_of([&] { tally_votes(p); }), ErrorCode::kNoVotes);
}

TEST(Voting, PermutationInvarianceAndMonotonicity) {
  SeededRng rng(2718);
  for (int round = 0; round < 10000; ++round) {
    std::vector<L> votes;
    const std::size_t n = 1 + rng.uniform_below(15);
    for (std::size_t i = 0; i < n; ++i) votes.push_back(kAllLabels[rng.uniform_below(3)]);
    const auto [winner, tally] = tally_labels(votes);
    ASSERT_EQ(winner, oracle_winner(tally.count(L::kPositive), tally.count(L::kNegative),
                                    tally.count(L::kNeutral)));
    auto shuffled = votes;
    rng.shuffle(std::span<L>(shuffled));
    const auto again = tally_labels(shuffled);
    ASSERT_EQ(again.first, winner);
    ASSERT_EQ(again.second, tally);

    const int lead = tally.count(winner);
    const bool strict = std::count_if(kAllLabels.begin(), kAllLabels.end(),
                                      [&](L l) { return tally.count(l) == lead; }) == 1;
    if (strict) {
      votes.push_back(winner);
      ASSERT_EQ(tally_labels(votes).first, winner);
    }
  }
}

// ---------------------------------------------------------------------------
// Baselines

struct Fixture {
  PromptTemplateSet templates = tagged_templates();
  ChainOptions options;
};

TEST(Baselines, DirectInquiry) {
  Fixture f;
  LoggedBackend backend([](const llm::ChatRequest&) { return "积极"; });
  const ChainContext ctx{backend, f.templates, f.options};
  auto t = run_direct_inquiry(zh_idiom("得心应手"), ctx);
  EXPECT_EQ(t.final_label, L::kPositive);
  EXPECT_EQ(t.exchanges.size(), 1u);
  EXPECT_EQ(t.template_version, "test-1");
  EXPECT_EQ(t.exchanges[0].request.params.temperature, 0.0);

  LoggedBackend neg([](const llm::ChatRequest&) { return "It is negative."; });
  EXPECT_EQ(run_direct_inquiry(en_idiom("kick the bucket"), {neg, f.templates, f.options}).final_label,
            L::kNegative);

  LoggedBackend none([](const llm::ChatRequest&) { return "Who knows."; });
  try {
    run_direct_inquiry(en_idiom("x y"), {none, f.templates, f.options});
    FAIL();
  } catch (const ChainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAllUnparseable);
    EXPECT_EQ(e.partial().exchanges.size(), 1u);
  }
  const auto failed = run_strategy(StrategyKind::kDirect, en_idiom("x y"), {none, f.templates, f.options});
  ASSERT_TRUE(failed.failure);
  EXPECT_EQ(failed.failure->code, ErrorCode::kAllUnparseable);
  EXPECT_FALSE(failed.final_label);
}

TEST(Baselines, CallBudgetsAndContext) {
  Fixture f;
  const std::map<StrategyKind, std::vector<std::string>> expected_steps = {
      {StrategyKind::kDirect, {"judge"}},
      {StrategyKind::kIdiom, {"judge"}},
      {StrategyKind::kUsage, {"generate", "judge"}},
      {StrategyKind::kOrigin, {"origin", "judge"}},
      {StrategyKind::kOriginUsage, {"origin", "usage", "judge"}},
  };
  for (const auto& [kind, steps] : expected_steps) {
    LoggedBackend backend(script("neutral"));
    const auto t = run_strategy(kind, en_idiom("break the ice"), {backend, f.templates, f.options});
    ASSERT_FALSE(t.failure) << to_string(kind);
    EXPECT_EQ(t.final_label, L::kNeutral);
    std::vector<std::string> got;
    for (const auto& r : backend.log()) got.push_back(step_of(r));
    EXPECT_EQ(got, steps) << to_string(kind);
    EXPECT_LE(backend.log().size(), 3u);
    EXPECT_EQ(t.exchanges.size(), backend.log().size());
  }

  // Origin + usage feeds earlier outputs forward.
  LoggedBackend backend(script("positive"));
  const auto t = run_origin_usage_inquiry(en_idiom("break the ice"), {backend, f.templates, f.options});
  EXPECT_EQ(t.origin, "An old story.");
  EXPECT_EQ(t.context_sentence, "usage sentence 1");
  const std::string judge_prompt = backend.log()[2].messages.back().content;
  EXPECT_NE(judge_prompt.find("An old story."), std::string::npos);
  EXPECT_NE(judge_prompt.find("usage sentence 1"), std::string::npos);
}

TEST(Baselines, UsageWithCorpusPassage) {
  Fixture f;
  LoggedBackend backend(script("negative"));
  const dataset::CorpusDocument passage{"bnc:7", "He kicked the bucket last year.", Language::kEn, "bnc"};
  const auto t = run_usage_inquiry(en_idiom("kick the bucket"), {backend, f.templates, f.options}, passage);
  EXPECT_EQ(backend.log().size(), 1u);
  EXPECT_EQ(t.context_passage_id, "bnc:7");
  EXPECT_NE(backend.log()[0].messages.back().content.find(passage.text), std::string::npos);
}

TEST(Baselines, EmptyOriginFails) {
  Fixture f;
  LoggedBackend backend([](const llm::ChatRequest& r) {
    return step_of(r) == "origin" ? std::string("   ") : std::string("positive");
  });
  const auto t = run_strategy(StrategyKind::kOrigin, zh_idiom("四面楚歌"), {backend, f.templates, f.options});
  ASSERT_TRUE(t.failure);
  EXPECT_EQ(t.failure->code, ErrorCode::kOriginEmpty);
  EXPECT_EQ(t.exchanges.size(), 1u);
}

// ---------------------------------------------------------------------------
// DualCoTs

TEST(Chains, LiteralChainJudgesEachSentence) {
  Fixture f;
  const std::vector<std::string> verdicts = {"positive", "positive", "positive", "neutral", "positive"};
  LoggedBackend backend([&](const llm::ChatRequest& r) -> std::string {
    if (step_of(r) == "literal_generate") return five_items("s");
    return verdicts[static_cast<std::size_t>(r.params.sample_index)];
  });
  const auto run = run_literal_chain(en_idiom("break the ice"), {backend, f.templates, f.options});
  ASSERT_EQ(run.predictions.size(), 5u);
  int pos = 0, neu = 0;
  for (const auto& p : run.predictions) {
    pos += p.label == L::kPositive;
    neu += p.label == L::kNeutral;
  }
  EXPECT_EQ(pos, 4);
  EXPECT_EQ(neu, 1);
  EXPECT_EQ(run.exchanges.size(), 6u);
  EXPECT_EQ(run.exchanges[0].request.params.temperature, 0.7);
  EXPECT_EQ(run.exchanges[1].request.params.temperature, 0.0);
  EXPECT_EQ(run.predictions[2].sentence, "s3");
}

TEST(Chains, ShortGenerationLeavesParseErrorSlots) {
  Fixture f;
  LoggedBackend backend([](const llm::ChatRequest& r) -> std::string {
    if (step_of(r) == "literal_generate") return "1. a\n2. b\n3. c";
    return "negative";
  });
  const auto run = run_literal_chain(en_idiom("break the ice"), {backend, f.templates, f.options});
  ASSERT_EQ(run.predictions.size(), 5u);
  EXPECT_EQ(std::count_if(run.predictions.begin(), run.predictions.end(),
                          [](const ChainPrediction& p) { return p.label.has_value(); }),
            3);
  for (const auto& p : run.predictions) EXPECT_NE(p.label.has_value(), p.parse_error.has_value());
  EXPECT_EQ(backend.log().size(), 4u);

  LoggedBackend empty([](const llm::ChatRequest&) { return "   "; });
  EXPECT_EQ(code_of([&] { run_literal_chain(en_idiom("x y"), {empty, f.templates, f.options}); }),
            ErrorCode::kGenerationEmpty);
  EXPECT_EQ(code_of([&] { run_etymological_chain(en_idiom("x y"), {empty, f.templates, f.options}); }),
            ErrorCode::kOriginEmpty);
}

TEST(Chains, EtymologicalChainGroundsExamplesInOrigin) {
  Fixture f;
  LoggedBackend backend(script("中性"));
  const auto run = run_etymological_chain(zh_idiom("守株待兔"), {backend, f.templates, f.options});
  ASSERT_EQ(run.predictions.size(), 5u);
  EXPECT_EQ(run.origin, "An old story.");
  const auto log = backend.log();
  ASSERT_EQ(log.size(), 7u);
  EXPECT_EQ(step_of(log[0]), "etym_origin");
  EXPECT_EQ(step_of(log[1]), "etym_examples");
  for (std::size_t i = 1; i < log.size(); ++i) {
    EXPECT_NE(log[i].messages.back().content.find("An old story."), std::string::npos);
  }
}

TEST(DualCoTs, ThirteenCallsAndTenVotes) {
  Fixture f;
  for (bool parallel : {false, true}) {
    f.options.parallel_chains = parallel;
    LoggedBackend backend(script("positive"));
    const auto t = run_dualcots(en_idiom("break the ice"), {backend, f.templates, f.options});
    // 1 + 5 literal, 1 + 1 + 5 etymological.
    EXPECT_EQ(backend.log().size(), 13u);
    EXPECT_EQ(t.exchanges.size(), 13u);
    EXPECT_EQ(t.literal_predictions.size(), 5u);
    EXPECT_EQ(t.etymological_predictions.size(), 5u);
    EXPECT_EQ(t.tally.count(L::kPositive), 10);
    EXPECT_EQ(t.final_label, L::kPositive);
    std::map<std::string, int> per_step;
    for (const auto& ex : t.exchanges) ++per_step[step_of(ex.request)];
    EXPECT_EQ(per_step, (std::map<std::string, int>{{"literal_generate", 1},
                                                    {"literal_judge", 5},
                                                    {"etym_origin", 1},
                                                    {"etym_examples", 1},
                                                    {"etym_judge", 5}}));
  }
}

TEST(DualCoTs, TranscriptListsCallsInIssueOrder) {
  Fixture f;
  f.options.parallel_chains = false;
  LoggedBackend backend(script("negative"));
  const auto t = run_dualcots(zh_idiom("画蛇添足"), {backend, f.templates, f.options});
  const auto log = backend.log();
  ASSERT_EQ(log.size(), t.exchanges.size());
  for (std::size_t i = 0; i < log.size(); ++i) EXPECT_EQ(t.exchanges[i].request, log[i]);

  // With concurrent chains each chain's calls keep their relative order.
  f.options.parallel_chains = true;
  LoggedBackend par(script("negative"));
  const auto tp = run_dualcots(zh_idiom("画蛇添足"), {par, f.templates, f.options});
  std::vector<llm::ChatRequest> lit, ety;
  for (const auto& r : par.log()) (step_of(r).starts_with("literal") ? lit : ety).push_back(r);
  ASSERT_EQ(tp.exchanges.size(), lit.size() + ety.size());
  for (std::size_t i = 0; i < lit.size(); ++i) EXPECT_EQ(tp.exchanges[i].request, lit[i]);
  for (std::size_t i = 0; i < ety.size(); ++i) EXPECT_EQ(tp.exchanges[lit.size() + i].request, ety[i]);
}

TEST(DualCoTs, FailedChainStillVotesThroughTheOther) {
  Fixture f;
  LoggedBackend backend([](const llm::ChatRequest& r) -> std::string {
    const std::string step = step_of(r);
    if (step == "etym_origin") return "";
    if (step == "literal_generate") return five_items("s");
    return "negative";
  });
  const auto t = run_strategy(StrategyKind::kDualCoTs, en_idiom("kick the bucket"),
                              {backend, f.templates, f.options});
  EXPECT_FALSE(t.failure);
  EXPECT_EQ(t.final_label, L::kNegative);
  EXPECT_EQ(t.tally.total(), 5);
  ASSERT_EQ(t.etymological_predictions.size(), 5u);
  EXPECT_NE(t.etymological_predictions[0].parse_error->find("OriginEmpty"), std::string::npos);
  EXPECT_EQ(backend.log().size(), 7u);
}

TEST(DualCoTs, NoVotesWhenNothingParses) {
  Fixture f;
  LoggedBackend backend(script("I am not sure."));
  const auto t = run_strategy(StrategyKind::kDualCoTs, zh_idiom("杯弓蛇影"),
                              {backend, f.templates, f.options});
  ASSERT_TRUE(t.failure);
  EXPECT_EQ(t.failure->code, ErrorCode::kNoVotes);
  EXPECT_EQ(t.exchanges.size(), 13u);
  EXPECT_EQ(t.all_predictions().size(), 10u);
}

class TruncatingBackend : public llm::ChatBackend {
 public:
  llm::BackendResponse complete(const llm::ChatRequest& r) override {
    const std::string step = step_of(r);
    if (step.ends_with("judge") && r.params.sample_index == 2) {
      throw Error(ErrorCode::kTruncated, "cut off");
    }
    llm::BackendResponse out;
    out.text = script("neutral")(r);
    return out;
  }
  std::string id() const override { return "trunc"; }
};

TEST(DualCoTs, TruncatedJudgmentBecomesFailedSlot) {
  Fixture f;
  TruncatingBackend backend;
  const auto t = run_dualcots(en_idiom("spill the beans"), {backend, f.templates, f.options});
  EXPECT_EQ(t.final_label, L::kNeutral);
  EXPECT_EQ(t.tally.total(), 8);
  EXPECT_TRUE(t.literal_predictions[2].parse_error);
  EXPECT_EQ(t.exchanges.size(), 13u);
  EXPECT_EQ(std::count_if(t.exchanges.begin(), t.exchanges.end(),
                          [](const Exchange& e) { return e.error.has_value(); }),
            2);
}

TEST(DualCoTs, ResampleModeRunsWholeChains) {
  Fixture f;
  f.options.resample_mode = ResampleMode::kResample;
  f.options.samples_per_chain = 3;
  LoggedBackend backend(script("positive"));
  const auto t = run_dualcots(en_idiom("break the ice"), {backend, f.templates, f.options});
  // literal: 3 x (generate + judge); etymological: 3 x (origin + examples + judge)
  EXPECT_EQ(backend.log().size(), 15u);
  EXPECT_EQ(t.literal_predictions.size(), 3u);
  EXPECT_EQ(t.etymological_predictions.size(), 3u);
  std::set<int> indices;
  for (const auto& r : backend.log()) {
    if (step_of(r) == "literal_generate") indices.insert(r.params.sample_index);
  }
  EXPECT_EQ(indices, (std::set<int>{0, 1, 2}));
}

TEST(DualCoTs, BackendErrorsPropagate) {
  Fixture f;
  LoggedBackend backend([](const llm::ChatRequest&) -> std::string {
    throw Error(ErrorCode::kMissingFixture, "no answer");
  });
  EXPECT_EQ(code_of([&] {
              run_strategy(StrategyKind::kDualCoTs, en_idiom("a b"), {backend, f.templates, f.options});
            }),
            ErrorCode::kMissingFixture);
}

TEST(DualCoTs, NeutralLiteralTallyFlipsToPositive) {
  const auto templates = PromptTemplateSet::load(source_path("templates"));
  auto replay = llm::ReplayBackend::load(source_path("data/fixtures/flip/fixture.jsonl"));
  const ChainContext ctx{*replay, templates, {}};
  const auto t = run_dualcots(zh_idiom("如花似玉"), ctx);
  EXPECT_EQ(tally_votes(t.literal_predictions).first, L::kNeutral);
  EXPECT_EQ(t.final_label, L::kPositive);
}

// ---------------------------------------------------------------------------
// Runner and transcripts

TEST(Runner, OrderDoesNotDependOnWorkers) {
  Fixture f;
  const auto scenarios = tools::load_scenarios(source_path("data/fixtures/golden/scenario.jsonl"));
  llm::ScriptedBackend backend("scenario", [&](const llm::ChatRequest& r) {
    return tools::scenario_reply(scenarios, r);
  });
  const auto templates = PromptTemplateSet::load(source_path("templates"));
  const ChainContext ctx{backend, templates, f.options};
  std::vector<RunItem> items;
  for (const auto& s : scenarios) items.push_back({s.idiom, std::nullopt});
  const auto one = run_batch(items, StrategyKind::kDualCoTs, ctx, 1);
  ASSERT_EQ(one.size(), items.size());
  for (std::size_t i = 0; i < items.size(); ++i) EXPECT_EQ(one[i].idiom.surface, items[i].idiom.surface);
  for (std::size_t w : {2u, 7u, 32u}) {
    EXPECT_EQ(transcripts_to_jsonl(run_batch(items, StrategyKind::kDualCoTs, ctx, w)),
              transcripts_to_jsonl(one));
  }
}

TEST(Runner, FatalErrorIsRethrown) {
  Fixture f;
  std::atomic<int> calls{0};
  LoggedBackend backend([&](const llm::ChatRequest& r) -> std::string {
    if (r.messages.back().content.find("bad") != std::string::npos) {
      throw Error(ErrorCode::kTransportFailure, "down");
    }
    ++calls;
    return script("positive")(r);
  });
  std::vector<RunItem> items;
  for (int i = 0; i < 10; ++i) items.push_back({en_idiom("ok " + std::to_string(i)), std::nullopt});
  items.push_back({en_idiom("bad one"), std::nullopt});
  EXPECT_EQ(code_of([&] {
              run_batch(items, StrategyKind::kDirect, {backend, f.templates, f.options}, 3);
            }),
            ErrorCode::kTransportFailure);
}

TEST(Transcript, JsonRoundTrip) {
  Fixture f;
  LoggedBackend backend(script("positive"));
  auto t = run_dualcots(en_idiom("break the ice"), {backend, f.templates, f.options});
  t.idiom.gold_sentiment = L::kPositive;
  t.failure = TranscriptFailure{ErrorCode::kNoVotes, "demo"};
  t.exchanges[3].error = "Truncated: cut";
  TempDir dir;
  write_transcripts({t, t}, dir / "t.jsonl");
  const auto back = read_transcripts(dir / "t.jsonl");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], t);
  const auto j = transcript_to_json(t);
  EXPECT_TRUE(j.contains("requests_and_responses"));
  EXPECT_TRUE(j.contains("vote_tally"));
  EXPECT_EQ(j["final"], "positive");
}

}  // namespace
}  // namespace idiomlex::chains
