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

#include "idiomlex/chains/strategies.h"

#include <future>

#include "idiomlex/chains/items.h"
#include "idiomlex/chains/voting.h"
#include "idiomlex/sentiment_parser.h"
#include "idiomlex/text.h"

namespace idiomlex::chains {

std::string_view to_string(ResampleMode mode) {
  return mode == ResampleMode::kJudgeItems ? "judge-items" : "resample";
}

std::optional<ResampleMode> resample_mode_from_string(std::string_view s) {
  if (s == "judge-items" || s == "judge_items") return ResampleMode::kJudgeItems;
  if (s == "resample") return ResampleMode::kResample;
  return std::nullopt;
}

namespace {

// Issues requests for one strategy and keeps the exchange log.
class Session {
 public:
  Session(const IdiomEntry& idiom, StrategyKind strategy, const ChainContext& ctx)
      : idiom_(idiom), strategy_(strategy), ctx_(ctx) {}

  std::string render(std::string_view step, TemplateVars vars) const {
    vars["idiom"] = idiom_.surface;
    return ctx_.templates.render(idiom_.language, strategy_, step, vars);
  }

  // nullopt when the backend reported a truncated or empty reply.
  std::optional<std::string> ask(std::string_view step, const std::string& prompt,
                                 bool generation, int sample_index) {
    const ChainOptions& o = ctx_.options;
    llm::ChatRequest request;
    request.messages = {{llm::Role::kUser, prompt}};
    request.params.model = o.model;
    request.params.temperature = generation ? o.generation_temperature : o.judge_temperature;
    request.params.max_tokens = generation ? o.generation_max_tokens : o.judge_max_tokens;
    request.params.sample_index = sample_index;
    request.step = std::string(template_dir(strategy_)) + "/" + std::string(step);
    try {
      llm::BackendResponse r = ctx_.backend.complete(request);
      exchanges_.push_back({std::move(request), r.text, std::nullopt});
      return std::move(r.text);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTruncated) throw;
      exchanges_.push_back({std::move(request), "",
                            std::string(error_code_name(e.code())) + ": " + e.what()});
      return std::nullopt;
    }
  }

  ChainPrediction judge(std::string_view step, const std::string& prompt, int sample_index,
                        std::vector<std::string> trace, std::string sentence = "") {
    const auto reply = ask(step, prompt, /*generation=*/false, sample_index);
    if (!reply) {
      return ChainPrediction::failed(*exchanges_.back().error, "", std::move(trace),
                                     std::move(sentence));
    }
    if (auto parsed = try_parse_sentiment_label(*reply, idiom_.language)) {
      return ChainPrediction::parsed(parsed->label, *reply, std::move(trace), std::move(sentence));
    }
    return ChainPrediction::failed("Unparseable: no usable sentiment keyword", *reply,
                                   std::move(trace), std::move(sentence));
  }

  ChainTranscript base() const {
    ChainTranscript t;
    t.idiom = idiom_;
    t.strategy = strategy_;
    t.template_version = ctx_.templates.version();
    t.exchanges = exchanges_;
    return t;
  }

  std::vector<Exchange>& exchanges() { return exchanges_; }
  const IdiomEntry& idiom() const { return idiom_; }
  const ChainOptions& options() const { return ctx_.options; }

 private:
  const IdiomEntry& idiom_;
  StrategyKind strategy_;
  const ChainContext& ctx_;
  std::vector<Exchange> exchanges_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message, ChainTranscript partial) {
  throw ChainError(code, message, std::move(partial));
}

std::string quote(const IdiomEntry& idiom) { return "'" + idiom.surface + "'"; }

// Final label for a single-prediction baseline.
ChainTranscript finish_single(Session& s, ChainPrediction p) {
  ChainTranscript t = s.base();
  t.predictions = {p};
  if (!p.label) {
    fail(ErrorCode::kAllUnparseable,
         "no sentiment label in the reply for " + quote(s.idiom()) + ": " + *p.parse_error,
         std::move(t));
  }
  auto [label, tally] = tally_votes(t.predictions);
  t.final_label = label;
  t.tally = tally;
  return t;
}

std::optional<std::string> nonempty(const std::optional<std::string>& reply) {
  if (!reply || text::trim(*reply).empty()) return std::nullopt;
  return std::string(text::trim(*reply));
}

// Generated sentence for the usage baselines.
std::string first_item(Session& s, const std::optional<std::string>& reply) {
  if (reply) {
    auto items = extract_numbered_items(*reply, 1);
    if (!items.empty()) return items.front();
  }
  fail(ErrorCode::kGenerationEmpty, "no example sentence generated for " + quote(s.idiom()),
       s.base());
}

std::string origin_or_fail(Session& s, const std::optional<std::string>& reply) {
  if (auto o = nonempty(reply)) return *o;
  fail(ErrorCode::kOriginEmpty, "no origin text generated for " + quote(s.idiom()), s.base());
}

std::string numbered(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += '\n';
    out += std::to_string(i + 1) + ". " + items[i];
  }
  return out;
}

std::string trace_step(std::string_view step, int i) {
  return std::string(step) + "#" + std::to_string(i);
}

void pad_slots(std::vector<ChainPrediction>& slots, std::size_t want, const std::string& reason,
               const std::vector<std::string>& trace) {
  while (slots.size() < want) slots.push_back(ChainPrediction::failed(reason, "", trace));
}

}  // namespace

ChainTranscript run_direct_inquiry(const IdiomEntry& idiom, const ChainContext& ctx) {
  Session s(idiom, StrategyKind::kDirect, ctx);
  auto p = s.judge("judge", s.render("judge", {}), 0, {"judge"});
  return finish_single(s, std::move(p));
}

ChainTranscript run_idiom_inquiry(const IdiomEntry& idiom, const ChainContext& ctx) {
  Session s(idiom, StrategyKind::kIdiom, ctx);
  auto p = s.judge("judge", s.render("judge", {}), 0, {"judge"});
  return finish_single(s, std::move(p));
}

ChainTranscript run_usage_inquiry(const IdiomEntry& idiom, const ChainContext& ctx,
                                  const std::optional<dataset::CorpusDocument>& passage) {
  Session s(idiom, StrategyKind::kUsage, ctx);
  std::string sentence;
  std::vector<std::string> trace;
  if (passage) {
    sentence = std::string(text::trim(passage->text));
    trace = {"passage", "judge"};
  } else {
    const auto reply = s.ask("generate", s.render("generate", {}), true, 0);
    sentence = first_item(s, reply);
    trace = {"generate", "judge"};
  }
  auto p = s.judge("judge", s.render("judge", {{"sentence", sentence}}), 0, trace, sentence);
  const auto annotate = [&](ChainTranscript& t) {
    t.context_sentence = sentence;
    if (passage) t.context_passage_id = passage->id;
  };
  ChainTranscript t;
  try {
    t = finish_single(s, std::move(p));
  } catch (ChainError& e) {
    ChainTranscript partial = e.partial();
    annotate(partial);
    throw ChainError(e.code(), e.what(), std::move(partial));
  }
  annotate(t);
  return t;
}

ChainTranscript run_origin_inquiry(const IdiomEntry& idiom, const ChainContext& ctx) {
  Session s(idiom, StrategyKind::kOrigin, ctx);
  const std::string origin = origin_or_fail(s, s.ask("origin", s.render("origin", {}), true, 0));
  auto p = s.judge("judge", s.render("judge", {{"origin", origin}}), 0, {"origin", "judge"});
  ChainTranscript t;
  try {
    t = finish_single(s, std::move(p));
  } catch (ChainError& e) {
    ChainTranscript partial = e.partial();
    partial.origin = origin;
    throw ChainError(e.code(), e.what(), std::move(partial));
  }
  t.origin = origin;
  return t;
}

ChainTranscript run_origin_usage_inquiry(const IdiomEntry& idiom, const ChainContext& ctx) {
  Session s(idiom, StrategyKind::kOriginUsage, ctx);
  const std::string origin = origin_or_fail(s, s.ask("origin", s.render("origin", {}), true, 0));
  std::string sentence;
  try {
    sentence = first_item(s, s.ask("usage", s.render("usage", {{"origin", origin}}), true, 0));
  } catch (ChainError& e) {
    ChainTranscript partial = e.partial();
    partial.origin = origin;
    throw ChainError(e.code(), e.what(), std::move(partial));
  }
  auto p = s.judge("judge", s.render("judge", {{"origin", origin}, {"sentence", sentence}}), 0,
                   {"origin", "usage", "judge"}, sentence);
  ChainTranscript t;
  try {
    t = finish_single(s, std::move(p));
  } catch (ChainError& e) {
    ChainTranscript partial = e.partial();
    partial.origin = origin;
    partial.context_sentence = sentence;
    throw ChainError(e.code(), e.what(), std::move(partial));
  }
  t.origin = origin;
  t.context_sentence = sentence;
  return t;
}

ChainRun run_literal_chain(const IdiomEntry& idiom, const ChainContext& ctx) {
  Session s(idiom, StrategyKind::kDualCoTs, ctx);
  const int n = std::max(1, ctx.options.samples_per_chain);
  ChainRun run;

  if (ctx.options.resample_mode == ResampleMode::kJudgeItems) {
    const auto reply = s.ask("literal_generate",
                             s.render("literal_generate", {{"count", std::to_string(n)}}), true, 0);
    const auto items =
        reply ? extract_numbered_items(*reply, static_cast<std::size_t>(n)) : std::vector<std::string>{};
    if (items.empty()) {
      fail(ErrorCode::kGenerationEmpty,
           "literal chain produced no example sentences for " + quote(idiom), s.base());
    }
    const std::string examples = numbered(items);
    for (std::size_t i = 0; i < items.size(); ++i) {
      const int k = static_cast<int>(i);
      run.predictions.push_back(s.judge(
          "literal_judge",
          s.render("literal_judge", {{"sentence", items[i]}, {"examples", examples}}), k,
          {"literal_generate", trace_step("literal_judge", k)}, items[i]));
    }
    pad_slots(run.predictions, static_cast<std::size_t>(n),
              "GenerationEmpty: only " + std::to_string(items.size()) + " of " +
                  std::to_string(n) + " sentences were generated",
              {"literal_generate"});
  } else {
    int produced = 0;
    for (int k = 0; k < n; ++k) {
      const auto reply = s.ask("literal_generate",
                               s.render("literal_generate", {{"count", "1"}}), true, k);
      const auto items = reply ? extract_numbered_items(*reply, 1) : std::vector<std::string>{};
      if (items.empty()) {
        run.predictions.push_back(ChainPrediction::failed(
            "GenerationEmpty: no sentence in sample " + std::to_string(k), reply.value_or(""),
            {trace_step("literal_generate", k)}));
        continue;
      }
      ++produced;
      run.predictions.push_back(s.judge(
          "literal_judge",
          s.render("literal_judge", {{"sentence", items[0]}, {"examples", numbered(items)}}), k,
          {trace_step("literal_generate", k), trace_step("literal_judge", k)}, items[0]));
    }
    if (produced == 0) {
      fail(ErrorCode::kGenerationEmpty,
           "literal chain produced no example sentences for " + quote(idiom), s.base());
    }
  }
  run.exchanges = std::move(s.exchanges());
  return run;
}

ChainRun run_etymological_chain(const IdiomEntry& idiom, const ChainContext& ctx) {
  Session s(idiom, StrategyKind::kDualCoTs, ctx);
  const int n = std::max(1, ctx.options.samples_per_chain);
  ChainRun run;

  // One pass: origin -> `count` examples -> one judgment per example.
  const auto pass = [&](int sample, int count) -> std::optional<std::string> {
    const std::string origin =
        origin_or_fail(s, s.ask("etym_origin", s.render("etym_origin", {}), true, sample));
    if (!run.origin) run.origin = origin;
    const auto reply = s.ask(
        "etym_examples",
        s.render("etym_examples", {{"origin", origin}, {"count", std::to_string(count)}}), true,
        sample);
    const auto items = reply ? extract_numbered_items(*reply, static_cast<std::size_t>(count))
                             : std::vector<std::string>{};
    if (items.empty()) return std::nullopt;
    const std::string examples = numbered(items);
    for (std::size_t i = 0; i < items.size(); ++i) {
      const int k = count == 1 ? sample : static_cast<int>(i);
      const std::vector<std::string> trace =
          count == 1 ? std::vector<std::string>{trace_step("etym_origin", k),
                                                trace_step("etym_examples", k),
                                                trace_step("etym_judge", k)}
                     : std::vector<std::string>{"etym_origin", "etym_examples",
                                                trace_step("etym_judge", k)};
      run.predictions.push_back(s.judge(
          "etym_judge",
          s.render("etym_judge",
                   {{"origin", origin}, {"sentence", items[i]}, {"examples", examples}}),
          k, trace, items[i]));
    }
    return std::to_string(items.size());
  };

  try {
    if (ctx.options.resample_mode == ResampleMode::kJudgeItems) {
      const auto got = pass(0, n);
      if (!got) {
        fail(ErrorCode::kGenerationEmpty,
             "etymological chain produced no examples for " + quote(idiom), s.base());
      }
      pad_slots(run.predictions, static_cast<std::size_t>(n),
                "GenerationEmpty: only " + *got + " of " + std::to_string(n) +
                    " examples were generated",
                {"etym_origin", "etym_examples"});
    } else {
      int produced = 0;
      for (int k = 0; k < n; ++k) {
        if (pass(k, 1)) {
          ++produced;
        } else {
          run.predictions.push_back(ChainPrediction::failed(
              "GenerationEmpty: no example in sample " + std::to_string(k), "",
              {trace_step("etym_origin", k), trace_step("etym_examples", k)}));
        }
      }
      if (produced == 0) {
        fail(ErrorCode::kGenerationEmpty,
             "etymological chain produced no examples for " + quote(idiom), s.base());
      }
    }
  } catch (ChainError& e) {
    ChainTranscript partial = e.partial();
    partial.origin = run.origin;
    throw ChainError(e.code(), e.what(), std::move(partial));
  }
  run.exchanges = std::move(s.exchanges());
  return run;
}

ChainTranscript run_dualcots(const IdiomEntry& idiom, const ChainContext& ctx) {
  const auto n = static_cast<std::size_t>(std::max(1, ctx.options.samples_per_chain));

  // A chain that collapses still fills its slots, so the other chain can
  // carry the vote.
  const auto guarded = [&](ChainRun (*chain)(const IdiomEntry&, const ChainContext&),
                           std::string_view name) {
    try {
      return chain(idiom, ctx);
    } catch (const ChainError& e) {
      ChainRun run;
      run.exchanges = e.partial().exchanges;
      run.origin = e.partial().origin;
      pad_slots(run.predictions, n, std::string(error_code_name(e.code())) + ": " + e.what(),
                {std::string(name)});
      return run;
    }
  };

  ChainRun literal;
  ChainRun etym;
  if (ctx.options.parallel_chains) {
    auto lit_future = std::async(std::launch::async, guarded, &run_literal_chain, "literal");
    etym = guarded(&run_etymological_chain, "etymological");
    literal = lit_future.get();
  } else {
    literal = guarded(&run_literal_chain, "literal");
    etym = guarded(&run_etymological_chain, "etymological");
  }

  ChainTranscript t;
  t.idiom = idiom;
  t.strategy = StrategyKind::kDualCoTs;
  t.template_version = ctx.templates.version();
  t.exchanges = std::move(literal.exchanges);
  t.exchanges.insert(t.exchanges.end(), etym.exchanges.begin(), etym.exchanges.end());
  t.origin = etym.origin;
  t.literal_predictions = std::move(literal.predictions);
  t.etymological_predictions = std::move(etym.predictions);
  try {
    auto [label, tally] = tally_votes(t.all_predictions());
    t.final_label = label;
    t.tally = tally;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kNoVotes) throw;
    fail(ErrorCode::kNoVotes,
         "no parseable prediction in either chain for " + quote(idiom), std::move(t));
  }
  return t;
}

ChainTranscript run_strategy(StrategyKind kind, const IdiomEntry& idiom, const ChainContext& ctx,
                             const std::optional<dataset::CorpusDocument>& passage) {
  try {
    switch (kind) {
      case StrategyKind::kDirect:
        return run_direct_inquiry(idiom, ctx);
      case StrategyKind::kUsage:
        return run_usage_inquiry(idiom, ctx, passage);
      case StrategyKind::kIdiom:
        return run_idiom_inquiry(idiom, ctx);
      case StrategyKind::kOrigin:
        return run_origin_inquiry(idiom, ctx);
      case StrategyKind::kOriginUsage:
        return run_origin_usage_inquiry(idiom, ctx);
      case StrategyKind::kDualCoTs:
        return run_dualcots(idiom, ctx);
    }
  } catch (const ChainError& e) {
    ChainTranscript t = e.partial();
    t.failure = TranscriptFailure{e.code(), e.what()};
    return t;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown strategy");
}

}  // namespace idiomlex::chains
