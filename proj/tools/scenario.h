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

// Scripted model behaviour used to generate replay fixtures. Each scenario
// line fixes, per idiom, what every DualCoTs judgment should say:
//
//   {"surface": "如花似玉", "language": "zh", "sentiment": "positive",
//    "literal": "UUUPP", "etym": "PPPPP", "origin": "...",
//    "baselines": {"direct": "U"}}
//
// Codes: P positive, N negative, U neutral, X a reply with no label, and a
// trailing "-" for slots the generation step leaves out. An empty origin
// makes the etymological chain fail.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "idiomlex/lexicon.h"
#include "idiomlex/llm/backend.h"

namespace idiomlex::tools {

struct Scenario {
  IdiomEntry idiom;
  std::string literal;
  std::string etym;
  std::string origin;
  std::map<std::string, char> baselines;  // template dir -> code
};

std::vector<Scenario> load_scenarios(const std::filesystem::path& path);

// Deterministic reply for a request issued by any strategy.
std::string scenario_reply(const std::vector<Scenario>& scenarios,
                           const llm::ChatRequest& request);

}  // namespace idiomlex::tools
