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

#include "idiomlex/chains/items.h"

#include <array>

#include "idiomlex/text.h"

namespace idiomlex::chains {

namespace {

bool starts_with(std::string_view s, std::string_view p) {
  return s.substr(0, p.size()) == p;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Length of a run of ASCII or fullwidth digits at the front of s.
std::size_t digits_at(std::string_view s, int* value = nullptr) {
  std::size_t i = 0;
  int v = 0;
  while (i < s.size()) {
    if (is_digit(s[i])) {
      v = v * 10 + (s[i] - '0');
      i += 1;
    } else if (i + 3 <= s.size() && static_cast<unsigned char>(s[i]) == 0xEF &&
               static_cast<unsigned char>(s[i + 1]) == 0xBC &&
               static_cast<unsigned char>(s[i + 2]) >= 0x90 &&
               static_cast<unsigned char>(s[i + 2]) <= 0x99) {
      v = v * 10 + (static_cast<unsigned char>(s[i + 2]) - 0x90);
      i += 3;
    } else {
      break;
    }
  }
  if (value != nullptr) *value = v;
  return i;
}

constexpr std::array<std::string_view, 10> kCjkNumerals = {
    "一", "二", "三", "四", "五", "六", "七", "八", "九", "十"};

std::size_t cjk_numeral_at(std::string_view s) {
  std::size_t i = 0;
  bool more = true;
  while (more) {
    more = false;
    for (std::string_view n : kCjkNumerals) {
      if (starts_with(s.substr(i), n)) {
        i += n.size();
        more = true;
        break;
      }
    }
  }
  return i;
}

std::size_t skip_spaces(std::string_view s, std::size_t i) {
  while (true) {
    if (i < s.size() && (s[i] == ' ' || s[i] == '\t')) {
      ++i;
    } else if (starts_with(s.substr(i), "　")) {
      i += 3;
    } else {
      return i;
    }
  }
}

// Punctuation that may follow a list number.
std::size_t number_terminator(std::string_view s) {
  for (std::string_view t : {".", ")", ":", "、", "．", "）", "："}) {
    if (starts_with(s, t)) {
      // "3.5 stars" is a number, not a marker.
      if (t == "." && s.size() > 1 && is_digit(s[1])) return 0;
      return t.size();
    }
  }
  return 0;
}

constexpr std::array<std::string_view, 5> kEnLabels = {"sentence", "example", "item",
                                                       "usage", "sample"};
constexpr std::array<std::string_view, 5> kZhLabels = {"例句", "例子", "句子", "示例", "例"};

}  // namespace

std::optional<std::size_t> list_marker_length(std::string_view line) {
  // Bullets.
  for (std::string_view b : {"-", "*", "+"}) {
    if (starts_with(line, b) && line.size() > b.size() &&
        (line[b.size()] == ' ' || line[b.size()] == '\t')) {
      return skip_spaces(line, b.size());
    }
  }
  for (std::string_view b : {"•", "·", "–", "—", "●"}) {
    if (starts_with(line, b)) return skip_spaces(line, b.size());
  }
  // (1) （1） (一) （一）
  for (std::string_view open : {"(", "（"}) {
    if (!starts_with(line, open)) continue;
    std::size_t i = open.size();
    std::size_t n = digits_at(line.substr(i));
    if (n == 0) n = cjk_numeral_at(line.substr(i));
    if (n == 0) continue;
    i += n;
    for (std::string_view close : {")", "）"}) {
      if (starts_with(line.substr(i), close)) return skip_spaces(line, i + close.size());
    }
  }
  // 1. 2) 3、 4： ５．
  if (std::size_t n = digits_at(line); n > 0) {
    if (std::size_t t = number_terminator(line.substr(n)); t > 0) {
      return skip_spaces(line, n + t);
    }
    return std::nullopt;
  }
  // 一、 二.
  if (std::size_t n = cjk_numeral_at(line); n > 0) {
    for (std::string_view t : {"、", ".", "．"}) {
      if (starts_with(line.substr(n), t)) return skip_spaces(line, n + t.size());
    }
    return std::nullopt;
  }
  // Sentence 1: / Example 2. / 例句3：
  const std::string lower = text::ascii_lower(line.substr(0, 16));
  for (std::string_view label : kEnLabels) {
    if (!starts_with(lower, label)) continue;
    std::size_t i = skip_spaces(line, label.size());
    if (i < line.size() && line[i] == '#') ++i;
    const std::size_t n = digits_at(line.substr(i));
    if (n == 0) continue;
    i += n;
    if (std::size_t t = number_terminator(line.substr(i)); t > 0) {
      return skip_spaces(line, i + t);
    }
  }
  for (std::string_view label : kZhLabels) {
    if (!starts_with(line, label)) continue;
    std::size_t i = label.size();
    std::size_t n = digits_at(line.substr(i));
    if (n == 0) n = cjk_numeral_at(line.substr(i));
    if (n == 0) continue;
    i += n;
    if (std::size_t t = number_terminator(line.substr(i)); t > 0) {
      return skip_spaces(line, i + t);
    }
  }
  return std::nullopt;
}

namespace {

std::string strip_quotes(std::string_view s) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 6> kPairs = {{
      {"\"", "\""},
      {"'", "'"},
      {"“", "”"},
      {"‘", "’"},
      {"「", "」"},
      {"『", "』"},
  }};
  s = text::trim(s);
  for (const auto& [open, close] : kPairs) {
    if (s.size() >= open.size() + close.size() && starts_with(s, open) &&
        s.substr(s.size() - close.size()) == close) {
      const std::string_view inner = s.substr(open.size(), s.size() - open.size() - close.size());
      // Leave "'a' and 'b'" alone: the quotes are not a single outer pair.
      if (inner.find(close) == std::string_view::npos) return std::string(text::trim(inner));
    }
  }
  return std::string(s);
}

bool ends_with_colon(std::string_view s) {
  return (!s.empty() && s.back() == ':') ||
         (s.size() >= 3 && s.substr(s.size() - 3) == "：");
}

// "1. A 2. B 3. C" on one line, numbers counting up from 1.
std::vector<std::string> split_inline(std::string_view line) {
  std::vector<std::pair<std::size_t, std::size_t>> cuts;  // (marker start, text start)
  int next = 1;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (i > 0 && line[i - 1] != ' ' && line[i - 1] != '\t') continue;
    int value = 0;
    const std::size_t n = digits_at(line.substr(i), &value);
    if (n == 0 || value != next) continue;
    const std::size_t t = number_terminator(line.substr(i + n));
    if (t == 0) continue;
    cuts.emplace_back(i, skip_spaces(line, i + n + t));
    ++next;
  }
  if (cuts.size() < 2 || cuts.front().first != 0) return {};
  std::vector<std::string> out;
  for (std::size_t c = 0; c < cuts.size(); ++c) {
    const std::size_t end = c + 1 < cuts.size() ? cuts[c + 1].first : line.size();
    out.emplace_back(line.substr(cuts[c].second, end - cuts[c].second));
  }
  return out;
}

}  // namespace

std::vector<std::string> extract_numbered_items(std::string_view response,
                                                std::size_t expected) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start <= response.size();) {
    auto end = response.find('\n', start);
    if (end == std::string_view::npos) end = response.size();
    std::string_view line = text::trim(response.substr(start, end - start));
    // Markdown emphasis around a marker ("**1.** text") is common.
    while (starts_with(line, "**")) line = text::trim(line.substr(2));
    if (!line.empty()) lines.push_back(line);
    start = end + 1;
  }

  std::vector<std::string> raw;
  std::size_t marked = 0;
  std::string_view first_marked;
  for (std::string_view line : lines) {
    if (list_marker_length(line)) {
      if (marked++ == 0) first_marked = line;
    }
  }
  if (marked == 1 && !split_inline(first_marked).empty()) {
    raw = split_inline(first_marked);
  } else if (marked > 0) {
    for (std::string_view line : lines) {
      if (auto n = list_marker_length(line)) raw.emplace_back(line.substr(*n));
    }
  } else if (lines.size() == 1 && !split_inline(lines[0]).empty()) {
    raw = split_inline(lines[0]);
  } else {
    for (std::string_view line : lines) {
      if (lines.size() > 1 && ends_with_colon(line)) continue;
      raw.emplace_back(line);
    }
  }

  std::vector<std::string> out;
  for (const std::string& r : raw) {
    std::string item = r;
    text::replace_all(item, "**", "");
    item = strip_quotes(item);
    if (item.empty()) continue;
    out.push_back(std::move(item));
    if (out.size() == expected) break;
  }
  return out;
}

}  // namespace idiomlex::chains
