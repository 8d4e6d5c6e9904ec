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

#include "idiomlex/chains/templates.h"

#include <algorithm>
#include <set>
#include <tuple>

#include "idiomlex/error.h"
#include "idiomlex/text.h"

namespace idiomlex::chains {

namespace fs = std::filesystem;

const std::vector<StepSpec>& steps_for(StrategyKind kind) {
  static const std::vector<StepSpec> kDirect = {{"judge", {"idiom"}, {}}};
  static const std::vector<StepSpec> kIdiom = {{"judge", {"idiom"}, {}}};
  static const std::vector<StepSpec> kUsage = {
      {"generate", {"idiom"}, {}},
      {"judge", {"idiom", "sentence"}, {}},
  };
  static const std::vector<StepSpec> kOrigin = {
      {"origin", {"idiom"}, {}},
      {"judge", {"idiom", "origin"}, {}},
  };
  static const std::vector<StepSpec> kOriginUsage = {
      {"origin", {"idiom"}, {}},
      {"usage", {"idiom", "origin"}, {}},
      {"judge", {"idiom", "origin", "sentence"}, {}},
  };
  static const std::vector<StepSpec> kDual = {
      {"literal_generate", {"idiom", "count"}, {}},
      {"literal_judge", {"idiom", "sentence"}, {"examples"}},
      {"etym_origin", {"idiom"}, {}},
      {"etym_examples", {"idiom", "origin", "count"}, {}},
      {"etym_judge", {"idiom", "origin", "sentence"}, {"examples"}},
  };
  switch (kind) {
    case StrategyKind::kDirect:
      return kDirect;
    case StrategyKind::kUsage:
      return kUsage;
    case StrategyKind::kIdiom:
      return kIdiom;
    case StrategyKind::kOrigin:
      return kOrigin;
    case StrategyKind::kOriginUsage:
      return kOriginUsage;
    case StrategyKind::kDualCoTs:
      return kDual;
  }
  return kDirect;
}

namespace {

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return text::is_ascii_alnum(c) || c == '_'; });
}

const StepSpec* find_step(StrategyKind kind, std::string_view step) {
  for (const StepSpec& s : steps_for(kind)) {
    if (s.name == step) return &s;
  }
  return nullptr;
}

std::string describe(Language language, StrategyKind strategy, std::string_view step) {
  return std::string(to_string(language)) + "/" + std::string(template_dir(strategy)) +
         "/" + std::string(step);
}

}  // namespace

PromptTemplate PromptTemplate::parse(std::string_view source) {
  PromptTemplate t;
  t.source_ = std::string(source);
  std::string literal;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const char c = source[i];
    if (c == '{' && i + 1 < source.size() && source[i + 1] == '{') {
      literal += '{';
      ++i;
    } else if (c == '}' && i + 1 < source.size() && source[i + 1] == '}') {
      literal += '}';
      ++i;
    } else if (c == '{') {
      const auto close = source.find('}', i + 1);
      if (close == std::string_view::npos) {
        throw Error(ErrorCode::kTemplateError, "unclosed '{' in template");
      }
      const std::string_view name = source.substr(i + 1, close - i - 1);
      if (!valid_name(name)) {
        throw Error(ErrorCode::kTemplateError,
                    "bad placeholder name '{" + std::string(name) + "}'");
      }
      if (!literal.empty()) t.segments_.push_back({false, std::move(literal)});
      literal.clear();
      t.segments_.push_back({true, std::string(name)});
      i = close;
    } else if (c == '}') {
      throw Error(ErrorCode::kTemplateError, "stray '}' in template (write '}}')");
    } else {
      literal += c;
    }
  }
  if (!literal.empty()) t.segments_.push_back({false, std::move(literal)});
  return t;
}

std::string PromptTemplate::render(const std::map<std::string, std::string>& vars) const {
  std::string out;
  for (const Segment& s : segments_) {
    if (!s.placeholder) {
      out += s.text;
      continue;
    }
    const auto it = vars.find(s.text);
    if (it == vars.end()) {
      throw Error(ErrorCode::kTemplateError, "no value for placeholder {" + s.text + "}");
    }
    out += it->second;
  }
  return out;
}

std::vector<std::string> PromptTemplate::placeholders() const {
  std::set<std::string> names;
  for (const Segment& s : segments_) {
    if (s.placeholder) names.insert(s.text);
  }
  return {names.begin(), names.end()};
}

void PromptTemplateSet::add(Language language, StrategyKind strategy,
                            std::string_view step, std::string_view source) {
  const StepSpec* spec = find_step(strategy, step);
  const std::string where = describe(language, strategy, step);
  if (spec == nullptr) {
    throw Error(ErrorCode::kTemplateError, "unknown template step " + where);
  }
  // Editors like to leave a final newline; prompts should not carry it.
  std::string_view body = source;
  while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.remove_suffix(1);
  PromptTemplate t;
  try {
    t = PromptTemplate::parse(body);
  } catch (const Error& e) {
    throw Error(ErrorCode::kTemplateError, where + ": " + e.what());
  }
  const auto used = t.placeholders();
  for (std::string_view r : spec->required) {
    if (std::find(used.begin(), used.end(), r) == used.end()) {
      throw Error(ErrorCode::kTemplateError,
                  where + ": missing required placeholder {" + std::string(r) + "}");
    }
  }
  for (const std::string& u : used) {
    const bool known =
        std::find(spec->required.begin(), spec->required.end(), u) != spec->required.end() ||
        std::find(spec->optional.begin(), spec->optional.end(), u) != spec->optional.end();
    if (!known) {
      throw Error(ErrorCode::kTemplateError,
                  where + ": placeholder {" + u + "} is not available at this step");
    }
  }
  templates_[{language, strategy, std::string(step)}] = std::move(t);
}

bool PromptTemplateSet::has_language(Language language) const {
  return std::any_of(templates_.begin(), templates_.end(),
                     [&](const auto& kv) { return std::get<0>(kv.first) == language; });
}

void PromptTemplateSet::validate() const {
  bool any = false;
  for (Language language : {Language::kZh, Language::kEn}) {
    if (!has_language(language)) continue;
    any = true;
    for (StrategyKind strategy : kAllStrategies) {
      for (const StepSpec& spec : steps_for(strategy)) {
        if (!templates_.count({language, strategy, std::string(spec.name)})) {
          throw Error(ErrorCode::kTemplateError,
                      "missing template " + describe(language, strategy, spec.name));
        }
      }
    }
  }
  if (!any) throw Error(ErrorCode::kTemplateError, "no templates loaded");
  if (version_.empty()) throw Error(ErrorCode::kTemplateError, "template set has no version");
}

PromptTemplateSet PromptTemplateSet::load(const fs::path& dir) {
  PromptTemplateSet set;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kTemplateError, "template directory not found: " + dir.string());
  }
  const fs::path version_file = dir / "VERSION";
  if (!fs::exists(version_file, ec)) {
    throw Error(ErrorCode::kTemplateError, "missing " + version_file.string());
  }
  set.version_ = std::string(text::trim(text::read_file(version_file)));
  for (Language language : {Language::kZh, Language::kEn}) {
    const fs::path lang_dir = dir / std::string(to_string(language));
    if (!fs::is_directory(lang_dir, ec)) continue;
    for (StrategyKind strategy : kAllStrategies) {
      for (const StepSpec& spec : steps_for(strategy)) {
        const fs::path file =
            lang_dir / std::string(template_dir(strategy)) / (std::string(spec.name) + ".txt");
        if (!fs::exists(file, ec)) {
          throw Error(ErrorCode::kTemplateError, "missing template file " + file.string());
        }
        set.add(language, strategy, spec.name, text::read_file(file));
      }
    }
  }
  set.validate();
  return set;
}

const PromptTemplate& PromptTemplateSet::get(Language language, StrategyKind strategy,
                                             std::string_view step) const {
  const auto it = templates_.find({language, strategy, std::string(step)});
  if (it == templates_.end()) {
    throw Error(ErrorCode::kTemplateError,
                "no template for " + describe(language, strategy, step));
  }
  return it->second;
}

std::string PromptTemplateSet::render(Language language, StrategyKind strategy,
                                      std::string_view step, const TemplateVars& vars) const {
  try {
    return get(language, strategy, step).render(vars);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kTemplateError) throw;
    throw Error(ErrorCode::kTemplateError,
                describe(language, strategy, step) + ": " + e.what());
  }
}

}  // namespace idiomlex::chains
