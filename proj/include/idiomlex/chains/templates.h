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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idiomlex/lexicon.h"
#include "idiomlex/strategy.h"

namespace idiomlex::chains {

// Placeholders a step's template must use, and the extra ones it may use.
struct StepSpec {
  std::string_view name;
  std::vector<std::string_view> required;
  std::vector<std::string_view> optional;
};

// Steps in execution order.
const std::vector<StepSpec>& steps_for(StrategyKind kind);

// "{name}" substitutes a value; "{{" and "}}" are literal braces.
class PromptTemplate {
 public:
  // Throws Error{kTemplateError} on unbalanced braces or bad names.
  static PromptTemplate parse(std::string_view source);

  // Every placeholder must be present in `vars`. Throws kTemplateError.
  std::string render(const std::map<std::string, std::string>& vars) const;

  std::vector<std::string> placeholders() const;  // sorted, unique
  const std::string& source() const { return source_; }

 private:
  struct Segment {
    bool placeholder;
    std::string text;
  };
  std::string source_;
  std::vector<Segment> segments_;
};

using TemplateVars = std::map<std::string, std::string>;

// All prompt templates, loaded from templates/<lang>/<strategy>/<step>.txt
// plus a VERSION file.
class PromptTemplateSet {
 public:
  // Loads every language directory that exists (at least one must). Each
  // loaded language needs a file for every step of every strategy. Throws
  // kTemplateError.
  static PromptTemplateSet load(const std::filesystem::path& dir);

  // Builds a set by hand; call validate() afterwards.
  void add(Language language, StrategyKind strategy, std::string_view step,
           std::string_view source);
  void set_version(std::string version) { version_ = std::move(version); }
  void validate() const;

  bool has_language(Language language) const;
  const PromptTemplate& get(Language language, StrategyKind strategy,
                            std::string_view step) const;
  std::string render(Language language, StrategyKind strategy,
                     std::string_view step, const TemplateVars& vars) const;

  const std::string& version() const { return version_; }

 private:
  using Key = std::tuple<Language, StrategyKind, std::string>;
  std::map<Key, PromptTemplate> templates_;
  std::string version_;
};

}  // namespace idiomlex::chains
