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

#include <string>
#include <string_view>
#include <vector>

// Minimal RFC 4180 reader/writer: comma separated, double-quote escaping,
// LF or CRLF line ends.
namespace idiomlex::csv {

using Row = std::vector<std::string>;

// Throws Error{kMalformedLine} on an unterminated quoted field.
std::vector<Row> parse(std::string_view text);

std::string escape(std::string_view field);
std::string format_row(const Row& row);  // ends with '\n'

}  // namespace idiomlex::csv
