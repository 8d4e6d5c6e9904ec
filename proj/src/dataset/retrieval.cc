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

#include <algorithm>
#include <thread>

#include "idiomlex/dataset.h"
#include "idiomlex/text.h"

namespace idiomlex::dataset {

std::vector<std::string> match_tokens(std::string_view text, Language language) {
  std::vector<std::string> out;
  if (language == Language::kEn) {
    for (auto& tok : text::word_tokens(text)) out.push_back(std::move(tok.norm));
  } else {
    for (std::string_view cp : text::utf8_codepoints(text)) out.emplace_back(cp);
  }
  return out;
}

ContextMatcher::ContextMatcher(std::span<const IdiomEntry> idioms,
                               const PronounOptions& options) {
  languages_.reserve(idioms.size());
  for (std::size_t i = 0; i < idioms.size(); ++i) {
    const IdiomEntry& idiom = idioms[i];
    languages_.push_back(idiom.language);
    for (const std::string& variant :
         expand_pronoun_variants(idiom.surface, idiom.language, options)) {
      Pattern p{{}, i};
      if (idiom.language == Language::kEn) {
        for (const std::string& word : text::split(variant, ' ')) {
          if (word == kPossessiveWildcard) {
            p.tokens.emplace_back(kPossessiveWildcard);
          } else {
            for (auto& t : match_tokens(word, Language::kEn)) {
              p.tokens.push_back(std::move(t));
            }
          }
        }
      } else {
        p.tokens = match_tokens(variant, Language::kZh);
      }
      if (p.tokens.empty()) continue;
      auto& index = by_first_token_[static_cast<std::size_t>(idiom.language)];
      index[p.tokens.front()].push_back(patterns_.size());
      patterns_.push_back(std::move(p));
    }
  }
}

bool ContextMatcher::matches_at(const Pattern& p,
                                const std::vector<std::string>& tokens,
                                std::size_t start) const {
  if (start + p.tokens.size() > tokens.size()) return false;
  for (std::size_t k = 0; k < p.tokens.size(); ++k) {
    const std::string& want = p.tokens[k];
    const std::string& got = tokens[start + k];
    if (want == kPossessiveWildcard) {
      if (got.size() <= 2 || !got.ends_with("'s")) return false;
    } else if (want != got) {
      return false;
    }
  }
  return true;
}

std::vector<std::size_t> ContextMatcher::match(const CorpusDocument& doc) const {
  const auto& index = by_first_token_[static_cast<std::size_t>(doc.language)];
  std::vector<std::size_t> found;
  if (index.empty()) return found;
  const std::vector<std::string> tokens = match_tokens(doc.text, doc.language);
  const auto wildcard = index.find(std::string(kPossessiveWildcard));
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto check = [&](const std::vector<std::size_t>& candidates) {
      for (std::size_t pi : candidates) {
        if (matches_at(patterns_[pi], tokens, i)) found.push_back(patterns_[pi].idiom);
      }
    };
    if (const auto it = index.find(tokens[i]); it != index.end()) check(it->second);
    if (wildcard != index.end()) check(wildcard->second);
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

std::vector<CorpusDocument> retrieve_contexts(const IdiomEntry& idiom,
                                              std::span<const CorpusDocument> corpus,
                                              const PronounOptions& options) {
  const ContextMatcher matcher(std::span<const IdiomEntry>(&idiom, 1), options);
  std::vector<CorpusDocument> out;
  for (const CorpusDocument& doc : corpus) {
    if (doc.language == idiom.language && !matcher.match(doc).empty()) {
      out.push_back(doc);
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> retrieve_all(
    std::span<const IdiomEntry> idioms, std::span<const CorpusDocument> corpus,
    std::size_t workers, const PronounOptions& options) {
  const ContextMatcher matcher(idioms, options);
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(corpus.size(), 1));
  const std::size_t shard = (corpus.size() + workers - 1) / workers;

  // shard -> (idiom, doc) pairs in document order
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> found(workers);
  const auto scan = [&](std::size_t w) {
    const std::size_t begin = w * shard;
    const std::size_t end = std::min(corpus.size(), begin + shard);
    for (std::size_t d = begin; d < end; ++d) {
      for (std::size_t idiom : matcher.match(corpus[d])) found[w].emplace_back(idiom, d);
    }
  };
  if (workers == 1) {
    scan(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(scan, w);
  }

  std::vector<std::vector<std::size_t>> per_idiom(idioms.size());
  for (const auto& shard_hits : found) {
    for (const auto& [idiom, doc] : shard_hits) per_idiom[idiom].push_back(doc);
  }
  return per_idiom;
}

}  // namespace idiomlex::dataset
