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

#include "idiomlex/text.h"

#include <atomic>
#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>
#include <utility>

#include <unistd.h>

#include "idiomlex/error.h"

namespace idiomlex::text {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
           c == '\v';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  // U+3000 ideographic space shows up in Chinese model output.
  constexpr std::string_view kIdeographicSpace = "\xE3\x80\x80";
  while (s.starts_with(kIdeographicSpace)) s.remove_prefix(3);
  while (s.ends_with(kIdeographicSpace)) s.remove_suffix(3);
  return s;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_ascii_alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

std::vector<std::string_view> utf8_codepoints(std::string_view s) {
  std::vector<std::string_view> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto lead = static_cast<unsigned char>(s[i]);
    std::size_t len = 1;
    if (lead >= 0xF0 && lead < 0xF8) {
      len = 4;
    } else if (lead >= 0xE0) {
      len = lead < 0xF0 ? 3 : 1;
    } else if (lead >= 0xC0) {
      len = 2;
    }
    if (i + len > s.size()) len = 1;
    for (std::size_t j = 1; j < len; ++j) {
      if ((static_cast<unsigned char>(s[i + j]) & 0xC0) != 0x80) {
        len = 1;
        break;
      }
    }
    out.push_back(s.substr(i, len));
    i += len;
  }
  return out;
}

std::vector<WordToken> word_tokens(std::string_view s) {
  constexpr std::string_view kCurly = "\xE2\x80\x99";
  std::vector<WordToken> tokens;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!is_ascii_alnum(s[i]) && s[i] != '\'' && !s.substr(i).starts_with(kCurly)) {
      ++i;
      continue;
    }
    // Collect (byte offset, folded char) pairs for the run.
    std::vector<std::pair<std::size_t, char>> chars;
    while (i < s.size()) {
      if (is_ascii_alnum(s[i]) || s[i] == '\'') {
        chars.emplace_back(i, s[i]);
        ++i;
      } else if (s.substr(i).starts_with(kCurly)) {
        chars.emplace_back(i, '\'');
        i += kCurly.size();
      } else {
        break;
      }
    }
    std::size_t first = 0;
    std::size_t last = chars.size();
    while (first < last && chars[first].second == '\'') ++first;
    while (last > first && chars[last - 1].second == '\'') --last;
    if (first == last) continue;
    WordToken tok;
    tok.pos = chars[first].first;
    const std::size_t end_char = chars[last - 1].first;
    tok.len = end_char + (s[end_char] == '\'' || is_ascii_alnum(s[end_char])
                              ? 1
                              : kCurly.size()) -
              tok.pos;
    for (std::size_t k = first; k < last; ++k) tok.norm.push_back(chars[k].second);
    tok.norm = ascii_lower(tok.norm);
    tokens.push_back(std::move(tok));
  }
  return tokens;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      return out;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string_view truncate_utf8(std::string_view s, std::size_t max_bytes) {
  if (s.size() <= max_bytes) return s;
  std::size_t cut = max_bytes;
  while (cut > 0 && (static_cast<unsigned char>(s[cut]) & 0xC0) == 0x80) --cut;
  return s.substr(0, cut);
}

bool replace_all(std::string& s, std::string_view from, std::string_view to) {
  if (from.empty()) return false;
  bool changed = false;
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
    changed = true;
  }
  return changed;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::kIoFailure, "read failed: " + path.string());
  }
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view data) {
  static std::atomic<unsigned> counter{0};
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ostringstream tmp_name;
  tmp_name << path.filename().string() << ".tmp." << ::getpid() << '.'
           << std::hash<std::thread::id>{}(std::this_thread::get_id()) << '.'
           << counter.fetch_add(1);
  const std::filesystem::path tmp = path.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error(ErrorCode::kIoFailure, "cannot create " + tmp.string());
    }
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp, ec);
      throw Error(ErrorCode::kIoFailure, "write failed: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoFailure, "rename failed: " + path.string());
  }
}

}  // namespace idiomlex::text
