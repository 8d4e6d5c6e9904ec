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

#include <array>
#include <optional>
#include <string_view>

namespace idiomlex {

// Inquiry strategies, in report order.
enum class StrategyKind { kDirect, kUsage, kIdiom, kOrigin, kOriginUsage, kDualCoTs };

inline constexpr std::array<StrategyKind, 6> kAllStrategies = {
    StrategyKind::kDirect, StrategyKind::kUsage,       StrategyKind::kIdiom,
    StrategyKind::kOrigin, StrategyKind::kOriginUsage, StrategyKind::kDualCoTs};

// CLI / file name: "direct", "usage", "idiom", "origin", "origin-usage",
// "dualcots".
std::string_view to_string(StrategyKind kind);
std::optional<StrategyKind> strategy_from_string(std::string_view s);

// Report row name: "Direct Inquiry", ..., "DualCoTs".
std::string_view display_name(StrategyKind kind);

// Template directory name: "direct", ..., "origin_usage", "dualcots".
std::string_view template_dir(StrategyKind kind);

}  // namespace idiomlex
