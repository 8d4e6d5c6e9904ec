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
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "idiomlex/calo.h"
#include "idiomlex/lexicon.h"

namespace idiomlex::dataset {

// ---------------------------------------------------------------------------
// Types

struct CorpusDocument {
  std::string id;
  std::string text;
  Language language = Language::kZh;
  std::string source;

  bool operator==(const CorpusDocument&) const = default;
};

enum class SplitName { kTrain, kDev, kTest, kUnlabelled };

inline constexpr std::array<SplitName, 4> kAllSplits = {
    SplitName::kTrain, SplitName::kDev, SplitName::kTest,
    SplitName::kUnlabelled};

std::string_view to_string(SplitName split);  // "train", ..., "unlabelled"
std::optional<SplitName> split_from_string(std::string_view s);

struct SamplingConfig {
  std::optional<std::size_t> k;  // nullopt keeps every passage
  std::uint64_t seed = 0;
};

struct DatasetEntry {
  IdiomEntry idiom;
  CorpusDocument passage;
  SplitName split = SplitName::kTrain;

  bool operator==(const DatasetEntry&) const = default;
};

// Canonical row order: (language, surface, passage id).
bool entry_less(const DatasetEntry& a, const DatasetEntry& b);

using IdiomKey = std::pair<Language, std::string>;
inline IdiomKey key_of(const IdiomEntry& idiom) {
  return {idiom.language, idiom.surface};
}

// ---------------------------------------------------------------------------
// Lexicon ingestion

struct LexiconOptions {
  // Sources earlier in the list win label conflicts. Empty means any
  // conflict is an error.
  std::vector<std::string> source_priority;
  // Fill a missing gold sentiment from the CALO emotions.
  bool derive_from_emotions = true;
  PolarityTable polarity = PolarityTable::defaults();
};

struct LexiconLoad {
  std::vector<IdiomEntry> entries;  // first-occurrence order
  std::vector<std::string> warnings;
};

// Reads one or more lexicon JSONL files and merges duplicates on
// (surface, language). Throws kMalformedLine, kConflictUnresolved,
// kIoFailure.
LexiconLoad ingest_lexicons(std::span<const std::filesystem::path> paths,
                            const LexiconOptions& options = {});
LexiconLoad ingest_lexicon(const std::filesystem::path& path,
                           const LexiconOptions& options = {});

// ---------------------------------------------------------------------------
// Corpora

// Plain text (one pre-segmented sentence per line, id "<stem>:<line>" with
// the line number zero-padded to eight digits so ids sort in file order) or,
// for .jsonl/.json files, JSON Lines {"id", "text"}. Blank lines are skipped.
std::vector<CorpusDocument> read_corpus(const std::filesystem::path& path,
                                        Language language,
                                        std::string source = "");

// ---------------------------------------------------------------------------
// Pronoun placeholders

struct PronounOptions {
  // Adds a "<word>'s" wildcard variant for someone's ("John's cup of tea").
  bool proper_noun_wildcard = false;
};

// Wildcard token used in expanded patterns when proper_noun_wildcard is set.
inline constexpr std::string_view kPossessiveWildcard = "*'s";

// Returns the surface itself followed by every pronoun substitution of its
// placeholders (one's, someone's, oneself, someone). ZH surfaces are
// returned unchanged.
std::vector<std::string> expand_pronoun_variants(
    std::string_view surface, Language language,
    const PronounOptions& options = {});

// ---------------------------------------------------------------------------
// Context retrieval

// Finds which idioms occur in a passage. EN patterns match as contiguous,
// case-insensitive word sequences; ZH patterns match as substrings.
class ContextMatcher {
 public:
  explicit ContextMatcher(std::span<const IdiomEntry> idioms,
                          const PronounOptions& options = {});

  // Ascending, de-duplicated indices into the idiom list.
  std::vector<std::size_t> match(const CorpusDocument& doc) const;

 private:
  struct Pattern {
    std::vector<std::string> tokens;
    std::size_t idiom;
  };

  bool matches_at(const Pattern& p, const std::vector<std::string>& tokens,
                  std::size_t start) const;

  std::vector<Language> languages_;
  std::vector<Pattern> patterns_;
  // Per language: first token -> pattern indices.
  std::array<std::unordered_map<std::string, std::vector<std::size_t>>, 2>
      by_first_token_;
};

// Tokens used by the matcher: lowercased words for EN, code points for ZH.
std::vector<std::string> match_tokens(std::string_view text, Language language);

std::vector<CorpusDocument> retrieve_contexts(
    const IdiomEntry& idiom, std::span<const CorpusDocument> corpus,
    const PronounOptions& options = {});

// For each idiom, ascending indices of matching corpus documents. The corpus
// is scanned in `workers` contiguous shards; the result does not depend on
// the worker count.
std::vector<std::vector<std::size_t>> retrieve_all(
    std::span<const IdiomEntry> idioms, std::span<const CorpusDocument> corpus,
    std::size_t workers = 1, const PronounOptions& options = {});

// ---------------------------------------------------------------------------
// Splits

struct SplitRatios {
  double train = 0.6;
  double dev = 0.2;
  double test = 0.2;
};

// Per language, labeled idioms are sorted by surface, shuffled with a seeded
// generator and cut into Train/Dev/Test: dev = floor(n*dev), test =
// floor(n*test), train takes the remainder. Unlabeled idioms map to
// Unlabelled. Throws kBadRatios and kInvalidArgument (duplicate idioms).
std::map<IdiomKey, SplitName> assign_splits(std::span<const IdiomEntry> idioms,
                                            const SplitRatios& ratios,
                                            std::uint64_t seed);

// Pairs every idiom with each retrieved passage. Idioms without passages
// produce no rows. Output is in entry_less order.
std::vector<DatasetEntry> build_entries(
    std::span<const IdiomEntry> idioms, std::span<const CorpusDocument> corpus,
    const std::map<IdiomKey, SplitName>& splits, std::size_t workers = 1,
    const PronounOptions& options = {});

// ---------------------------------------------------------------------------
// Balancing and statistics

// Keeps min(K, available) passages per idiom, drawn uniformly without
// replacement. Draws for one idiom depend only on (seed, language, surface,
// its passage ids), and samples are nested: the K=4 draw is a prefix of the
// K=8 draw. Output is in entry_less order.
std::vector<DatasetEntry> balance_sample(std::span<const DatasetEntry> entries,
                                         const SamplingConfig& config);

struct StatsCell {
  Language language;
  SplitName split;
  std::optional<std::size_t> k;
  std::size_t idiom_count = 0;
  std::size_t entry_count = 0;
};

struct DatasetStats {
  std::vector<StatsCell> cells;  // language, split, then k in request order

  const StatsCell* find(Language language, SplitName split,
                        std::optional<std::size_t> k) const;

  // Header: language,split,k,idioms,entries (k is "all" when unbounded).
  std::string to_csv() const;
};

DatasetStats compute_stats(std::span<const DatasetEntry> entries,
                           std::span<const std::optional<std::size_t>> ks,
                           std::uint64_t seed = 0);

// Parses "1,4,8,16,all". Throws kInvalidArgument.
std::vector<std::optional<std::size_t>> parse_k_list(std::string_view s);

// ---------------------------------------------------------------------------
// Persistence (JSON Lines, one entry per line)

void write_dataset(std::span<const DatasetEntry> entries,
                   const std::filesystem::path& path);
std::vector<DatasetEntry> read_dataset(const std::filesystem::path& path);

nlohmann::json entry_to_json(const DatasetEntry& entry);
DatasetEntry entry_from_json(const nlohmann::json& j);

}  // namespace idiomlex::dataset
