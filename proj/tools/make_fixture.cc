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

// Regenerates a replay fixture from a scenario file by running strategies
// against the scripted backend and recording every exchange.

#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "idiomlex/chains/runner.h"
#include "idiomlex/error.h"
#include "idiomlex/jsonl.h"
#include "idiomlex/text.h"
#include "scenario.h"

int main(int argc, char** argv) {
  using namespace idiomlex;
  CLI::App app{"Record a replay fixture from a scenario file", "make_fixture"};
  std::string scenario_path;
  std::string templates_dir = "templates";
  std::string out;
  std::string lexicon_out;
  std::vector<std::string> strategies = {"direct", "usage",        "idiom",
                                         "origin", "origin-usage", "dualcots"};
  std::string model = "gpt-3.5-turbo";
  app.add_option("--scenario", scenario_path)->required();
  app.add_option("--templates", templates_dir)->capture_default_str();
  app.add_option("--out", out, "Fixture JSONL")->required();
  app.add_option("--lexicon-out", lexicon_out, "Also write the idioms as a lexicon");
  app.add_option("--strategy", strategies, "Strategies to record (repeatable)");
  app.add_option("--model", model)->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    const auto scenarios = tools::load_scenarios(scenario_path);
    const auto templates = chains::PromptTemplateSet::load(templates_dir);
    auto scripted = std::make_shared<llm::ScriptedBackend>(
        "scenario", [&](const llm::ChatRequest& r) { return tools::scenario_reply(scenarios, r); });
    auto recorder = std::make_shared<llm::RecordingBackend>(scripted);
    chains::ChainOptions options;
    options.model = model;
    const chains::ChainContext ctx{*recorder, templates, options};

    std::vector<chains::RunItem> items;
    std::string lexicon;
    for (const auto& s : scenarios) {
      items.push_back({s.idiom, std::nullopt});
      lexicon += jsonl::dump(idiom_to_json(s.idiom)) + "\n";
    }
    for (const auto& name : strategies) {
      const auto kind = strategy_from_string(name);
      if (!kind) throw Error(ErrorCode::kConfigInvalid, "unknown strategy " + name);
      chains::run_batch(items, *kind, ctx, 1);
    }
    recorder->write_fixture(out);
    if (!lexicon_out.empty()) text::write_file_atomic(lexicon_out, lexicon);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
