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

#include "idiomlex/strategy.h"

#include <string>

#include "idiomlex/text.h"

namespace idiomlex {

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kDirect: return "direct";
    case StrategyKind::kUsage: return "usage";
    case StrategyKind::kIdiom: return "idiom";
    case StrategyKind::kOrigin: return "origin";
    case StrategyKind::kOriginUsage: return "origin-usage";
    case StrategyKind::kDualCoTs: return "dualcots";
  }
  return "direct";
}

std::optional<StrategyKind> strategy_from_string(std::string_view s) {
  std::string lower = text::ascii_lower(text::trim(s));
  text::replace_all(lower, "_", "-");
  for (StrategyKind kind : kAllStrategies) {
    if (lower == to_string(kind)) return kind;
  }
  return std::nullopt;
}

std::string_view display_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::kDirect: return "Direct Inquiry";
    case StrategyKind::kUsage: return "Usage Inquiry";
    case StrategyKind::kIdiom: return "Idiom Inquiry";
    case StrategyKind::kOrigin: return "Origin Inquiry";
    case StrategyKind::kOriginUsage: return "Origin and Usage";
    case StrategyKind::kDualCoTs: return "DualCoTs";
  }
  return "";
}

std::string_view template_dir(StrategyKind kind) {
  return kind == StrategyKind::kOriginUsage ? "origin_usage" : to_string(kind);
}

}  // namespace idiomlex
