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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idiomlex::chains {

// Pulls a list of items out of a model reply. Recognised markers at the start
// of a line: "1." "2)" "3、" "4：" "(5)" "（一）" "一、" "- " "* " "•" "·" and
// labels like "Sentence 1:" or "例句1：" (ASCII or fullwidth digits). When
// any line carries a marker, unmarked lines (preambles, notes) are dropped;
// otherwise each non-empty line is an item, and a single line numbered
// inline ("1. A 2. B") is split at its numbers. Matching outer quotes are
// removed. Returns at most `expected` items.
std::vector<std::string> extract_numbered_items(std::string_view response,
                                                std::size_t expected);

// Byte length of the list marker (plus following spaces) opening `line`.
std::optional<std::size_t> list_marker_length(std::string_view line);

}  // namespace idiomlex::chains
