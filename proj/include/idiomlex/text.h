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
#include <string>
#include <string_view>
#include <vector>

// Small byte-level string helpers. All text in the pipeline is UTF-8; these
// functions never split a multi-byte sequence.
namespace idiomlex::text {

std::string_view trim(std::string_view s);

// Lowercases ASCII letters only; other bytes pass through untouched.
std::string ascii_lower(std::string_view s);

bool is_ascii_alnum(char c);

// Splits into UTF-8 code points. Invalid lead bytes become one-byte units.
std::vector<std::string_view> utf8_codepoints(std::string_view s);

// A word is a maximal run of ASCII letters, digits and apostrophes (the
// typographic apostrophe U+2019 counts and is folded to '). Leading and
// trailing apostrophes are quotes, not part of the word.
struct WordToken {
  std::size_t pos;   // byte offset in the source
  std::size_t len;   // byte length in the source
  std::string norm;  // ASCII-lowercased, apostrophes folded
};
std::vector<WordToken> word_tokens(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Cuts to at most max_bytes without splitting a code point.
std::string_view truncate_utf8(std::string_view s, std::size_t max_bytes);

bool replace_all(std::string& s, std::string_view from, std::string_view to);

// Whole-file helpers that throw Error{kIoFailure}.
std::string read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, std::string_view data);

}  // namespace idiomlex::text
