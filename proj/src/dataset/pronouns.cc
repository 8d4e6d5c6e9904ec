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
#include <array>
#include <set>

#include "idiomlex/dataset.h"
#include "idiomlex/text.h"

namespace idiomlex::dataset {
namespace {

constexpr std::array<std::string_view, 7> kPossessives = {
    "my", "your", "his", "her", "its", "our", "their"};
constexpr std::array<std::string_view, 7> kReflexives = {
    "myself", "yourself", "himself", "herself", "itself", "ourselves",
    "themselves"};
constexpr std::array<std::string_view, 7> kObjects = {
    "me", "you", "him", "her", "it", "us", "them"};

std::string fold_apostrophes(std::string_view word) {
  std::string out = text::ascii_lower(word);
  text::replace_all(out, "\xE2\x80\x99", "'");
  return out;
}

// Substitutions for one surface word; empty when it is not a placeholder.
std::vector<std::string> substitutions(std::string_view word,
                                       const PronounOptions& options) {
  const std::string w = fold_apostrophes(word);
  std::vector<std::string> out;
  if (w == "one's") {
    out.assign(kPossessives.begin(), kPossessives.end());
  } else if (w == "someone's" || w == "somebody's") {
    out.assign(kPossessives.begin(), kPossessives.end());
    if (options.proper_noun_wildcard) out.emplace_back(kPossessiveWildcard);
  } else if (w == "oneself") {
    out.assign(kReflexives.begin(), kReflexives.end());
  } else if (w == "someone" || w == "somebody") {
    out.assign(kObjects.begin(), kObjects.end());
  }
  return out;
}

}  // namespace

std::vector<std::string> expand_pronoun_variants(std::string_view surface,
                                                 Language language,
                                                 const PronounOptions& options) {
  const std::string original(text::trim(surface));
  std::vector<std::string> out{original};
  if (language != Language::kEn) return out;

  std::vector<std::string> words;
  for (const std::string& w : text::split(original, ' ')) {
    if (!w.empty()) words.push_back(w);
  }
  std::vector<std::vector<std::string>> choices;
  bool any_placeholder = false;
  for (const std::string& w : words) {
    auto subs = substitutions(w, options);
    if (subs.empty()) {
      choices.push_back({w});
    } else {
      any_placeholder = true;
      choices.push_back(std::move(subs));
    }
  }
  if (!any_placeholder) return out;

  // Cartesian product in lexicographic order of choice indices.
  std::vector<std::size_t> index(choices.size(), 0);
  std::set<std::string> seen{original};
  while (true) {
    std::vector<std::string> parts;
    parts.reserve(choices.size());
    for (std::size_t i = 0; i < choices.size(); ++i) {
      parts.push_back(choices[i][index[i]]);
    }
    std::string variant = text::join(parts, " ");
    if (seen.insert(variant).second) out.push_back(std::move(variant));

    std::size_t pos = choices.size();
    while (pos > 0) {
      --pos;
      if (++index[pos] < choices[pos].size()) break;
      index[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

}  // namespace idiomlex::dataset
