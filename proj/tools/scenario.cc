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

#include "scenario.h"

#include <array>

#include "idiomlex/error.h"
#include "idiomlex/jsonl.h"
#include "idiomlex/text.h"

namespace idiomlex::tools {

namespace {

constexpr std::array<std::string_view, 5> kLiteralEn = {
    "She said \"{s}\" twice before lunch.",
    "The phrase {s} showed up in the headline again.",
    "He wrote {s} on the whiteboard without explaining it.",
    "Everyone at the table repeated {s} with a grin.",
    "My neighbour used {s} when describing the weekend.",
};
constexpr std::array<std::string_view, 5> kEtymEn = {
    "Long after its first use, people still say {s} when things turn out that way.",
    "In the old story the hero ended up exactly as {s} suggests.",
    "Grandmother used {s} to describe the village feast.",
    "The reporter chose {s} to sum up the match.",
    "Teachers often quote {s} to their students.",
};
constexpr std::array<std::string_view, 5> kLiteralZh = {
    "他在信里写了“{s}”这几个字。", "这句话里出现了“{s}”。", "她随口说了一句“{s}”。",
    "大家都笑着重复“{s}”。",       "黑板上写着“{s}”。",
};
constexpr std::array<std::string_view, 5> kEtymZh = {
    "人们常用“{s}”来形容这种情形。", "故事的结局正如“{s}”所说。",
    "奶奶用“{s}”来称赞那场宴席。",   "记者用“{s}”概括了这场比赛。",
    "老师常引用“{s}”教育学生。",
};

const std::map<char, std::vector<std::string_view>>& replies(Language language) {
  static const std::map<char, std::vector<std::string_view>> kEn = {
      {'P',
       {"Positive.", "The sentiment is positive.", "Sentiment: positive",
        "In this sentence the phrase carries a positive connotation.",
        "Positive - it praises the subject."}},
      {'N',
       {"Negative.", "The sentiment is negative.", "Sentiment: negative",
        "Here the phrase sounds critical, so negative.", "Negative; it is not positive at all."}},
      {'U',
       {"Neutral.", "The sentiment is neutral.", "Sentiment: neutral",
        "It is used descriptively here, neither positive nor negative: neutral.", "neutral"}},
      {'X', {"It depends on the context.", "Hard to say without more context."}},
  };
  static const std::map<char, std::vector<std::string_view>> kZh = {
      {'P', {"积极", "该短语在句中表达的情感是积极的。", "情感：积极", "褒义，属于积极情感。", "积极。"}},
      {'N', {"消极", "这里表达的情感是消极的。", "情感：消极", "贬义，带有消极色彩。", "消极，并非积极。"}},
      {'U', {"中性", "这里只是客观描述，情感是中性的。", "情感：中性", "中性。", "不带褒贬色彩，属于中性。"}},
      {'X', {"很难判断。", "要看具体语境。"}},
  };
  return language == Language::kZh ? kZh : kEn;
}

std::string fill(std::string_view pattern, const std::string& surface) {
  std::string out(pattern);
  text::replace_all(out, "{s}", surface);
  return out;
}

std::string sentence(const Scenario& s, bool literal, std::size_t i) {
  const bool zh = s.idiom.language == Language::kZh;
  const auto& table = literal ? (zh ? kLiteralZh : kLiteralEn) : (zh ? kEtymZh : kEtymEn);
  return fill(table[i % table.size()], s.idiom.surface);
}

std::size_t produced(const std::string& codes) {
  const auto dash = codes.find('-');
  return dash == std::string::npos ? codes.size() : dash;
}

std::string judge_reply(const Scenario& s, char code, std::size_t variant) {
  const auto& options = replies(s.idiom.language).at(code);
  return std::string(options[(variant + s.idiom.surface.size()) % options.size()]);
}

std::string numbered_list(const Scenario& s, bool literal, std::size_t count) {
  const bool zh = s.idiom.language == Language::kZh;
  std::string out = zh ? "以下是例句：\n" : "Here are the sentences:\n";
  for (std::size_t i = 0; i < count; ++i) {
    out += std::to_string(i + 1) + ". " + sentence(s, literal, i) + "\n";
  }
  return out;
}

std::string generic_origin(const Scenario& s) {
  return s.idiom.language == Language::kZh
             ? "“" + s.idiom.surface + "”出自古代典籍，后来成为常用成语。"
             : "\"" + s.idiom.surface + "\" grew out of everyday speech and became a fixed phrase.";
}

char baseline_code(const Scenario& s, const std::string& strategy) {
  const auto it = s.baselines.find(strategy);
  if (it != s.baselines.end()) return it->second;
  for (char c : s.literal) {
    if (c != '-') return c;
  }
  return 'U';
}

// Which slot of `codes` a judge prompt refers to.
std::size_t slot_of(const Scenario& s, bool literal, const std::string& prompt) {
  for (std::size_t i = 0; i < 5; ++i) {
    if (prompt.find(sentence(s, literal, i)) != std::string::npos) return i;
  }
  throw Error(ErrorCode::kInvalidArgument, "judge prompt names no scripted sentence");
}

}  // namespace

std::vector<Scenario> load_scenarios(const std::filesystem::path& path) {
  std::vector<Scenario> out;
  jsonl::for_each_line(path, [&](const nlohmann::json& j, std::size_t) {
    Scenario s;
    s.idiom = idiom_from_json(j);
    s.literal = j.value("literal", "");
    s.etym = j.value("etym", "");
    s.origin = j.contains("origin") ? j["origin"].get<std::string>() : generic_origin(s);
    if (j.contains("baselines")) {
      for (const auto& [k, v] : j["baselines"].items()) {
        s.baselines[k] = v.get<std::string>().at(0);
      }
    }
    out.push_back(std::move(s));
  });
  return out;
}

std::string scenario_reply(const std::vector<Scenario>& scenarios,
                           const llm::ChatRequest& request) {
  const std::string& prompt = request.messages.back().content;
  const Scenario* match = nullptr;
  for (const auto& s : scenarios) {
    if (prompt.find(s.idiom.surface) == std::string::npos) continue;
    if (!match || s.idiom.surface.size() > match->idiom.surface.size()) match = &s;
  }
  if (!match) throw Error(ErrorCode::kInvalidArgument, "prompt names no scripted idiom");
  const Scenario& s = *match;
  const std::string& step = request.step;
  const auto slash = step.find('/');
  const std::string strategy = step.substr(0, slash);
  const std::string name = step.substr(slash + 1);

  if (strategy == "dualcots") {
    if (name == "literal_generate") {
      return produced(s.literal) ? numbered_list(s, true, produced(s.literal)) : "";
    }
    if (name == "literal_judge") {
      const auto i = slot_of(s, true, prompt);
      return judge_reply(s, s.literal.at(i), i);
    }
    if (name == "etym_origin") return s.origin;
    if (name == "etym_examples") {
      return produced(s.etym) ? numbered_list(s, false, produced(s.etym)) : "";
    }
    if (name == "etym_judge") {
      const auto i = slot_of(s, false, prompt);
      return judge_reply(s, s.etym.at(i), i + 2);
    }
  } else {
    if (name == "origin") return s.origin;
    if (name == "generate" || name == "usage") return sentence(s, name == "generate", 0);
    if (name == "judge") return judge_reply(s, baseline_code(s, strategy), 1);
  }
  throw Error(ErrorCode::kInvalidArgument, "no scripted reply for step " + step);
}

}  // namespace idiomlex::tools
