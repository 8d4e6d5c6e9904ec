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
#include <functional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace idiomlex::jsonl {

// Compact single-line dump: sorted keys, raw UTF-8, invalid bytes replaced.
std::string dump(const nlohmann::json& j);

// Calls `fn(record, line_number)` for every non-blank line. Parse failures
// and Error{kMalformedLine} thrown by `fn` are rethrown as kMalformedLine
// with "<path>:<line>: " prefixed.
void for_each_line(
    const std::filesystem::path& path,
    const std::function<void(const nlohmann::json&, std::size_t)>& fn);

}  // namespace idiomlex::jsonl
