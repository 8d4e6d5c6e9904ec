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
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "idiomlex/dataset.h"
#include "idiomlex/error.h"
#include "idiomlex/jsonl.h"
#include "idiomlex/rng.h"
#include "idiomlex/text.h"

namespace idiomlex::dataset {

// ---------------------------------------------------------------------------
// Lexicon ingestion

namespace {

struct Vote {
  std::string source;
  SentimentLabel label;
};

struct Pending {
  IdiomEntry entry;
  std::vector<std::string> sources;
  std::vector<Vote> votes;
};

std::size_t priority_rank(const std::vector<std::string>& priority,
                          const std::string& source) {
  const auto it = std::find(priority.begin(), priority.end(), source);
  return static_cast<std::size_t>(it - priority.begin());
}

std::string describe(const IdiomEntry& e) {
  return "'" + e.surface + "' (" + std::string(to_string(e.language)) + ")";
}

}  // namespace

LexiconLoad ingest_lexicons(std::span<const std::filesystem::path> paths,
                            const LexiconOptions& options) {
  std::vector<Pending> pending;
  std::map<IdiomKey, std::size_t> index;

  for (const auto& path : paths) {
    jsonl::for_each_line(path, [&](const nlohmann::json& j, std::size_t) {
      IdiomEntry record = idiom_from_json(j);
      std::optional<SentimentLabel> label = record.gold_sentiment;
      if (!label && options.derive_from_emotions && !record.emotions.empty()) {
        label = calo_to_sentiment(record.emotions, options.polarity);
      }
      const IdiomKey key = key_of(record);
      auto [it, inserted] = index.emplace(key, pending.size());
      if (inserted) pending.push_back({record, {}, {}});
      Pending& slot = pending[it->second];
      if (std::find(slot.sources.begin(), slot.sources.end(), record.source) ==
          slot.sources.end()) {
        slot.sources.push_back(record.source);
      }
      for (const auto& e : record.emotions) {
        if (std::find(slot.entry.emotions.begin(), slot.entry.emotions.end(), e) ==
            slot.entry.emotions.end()) {
          slot.entry.emotions.push_back(e);
        }
      }
      if (label) slot.votes.push_back({record.source, *label});
    });
  }

  LexiconLoad out;
  out.entries.reserve(pending.size());
  for (Pending& p : pending) {
    std::set<SentimentLabel> distinct;
    for (const Vote& v : p.votes) distinct.insert(v.label);
    if (distinct.size() > 1) {
      std::string detail;
      for (const Vote& v : p.votes) {
        if (!detail.empty()) detail += ", ";
        detail += (v.source.empty() ? "<unnamed>" : v.source) + "=" +
                  std::string(to_string(v.label));
      }
      const auto& prio = options.source_priority;
      std::size_t best_rank = prio.size();
      for (const Vote& v : p.votes) best_rank = std::min(best_rank, priority_rank(prio, v.source));
      std::set<SentimentLabel> top;
      for (const Vote& v : p.votes) {
        if (priority_rank(prio, v.source) == best_rank) top.insert(v.label);
      }
      if (best_rank == prio.size() || top.size() != 1) {
        throw Error(ErrorCode::kConflictUnresolved,
                    "conflicting sentiments for " + describe(p.entry) + ": " + detail);
      }
      p.entry.gold_sentiment = *top.begin();
      out.warnings.push_back("conflicting sentiments for " + describe(p.entry) +
                             ": " + detail + "; kept " +
                             std::string(to_string(*top.begin())) + " from " +
                             prio[best_rank]);
    } else if (distinct.size() == 1) {
      p.entry.gold_sentiment = *distinct.begin();
    }
    std::vector<std::string> named;
    for (const auto& s : p.sources) {
      if (!s.empty()) named.push_back(s);
    }
    p.entry.source = text::join(named, "+");
    out.entries.push_back(std::move(p.entry));
  }
  return out;
}

LexiconLoad ingest_lexicon(const std::filesystem::path& path,
                           const LexiconOptions& options) {
  return ingest_lexicons(std::span<const std::filesystem::path>(&path, 1), options);
}

// ---------------------------------------------------------------------------
// Splits

std::map<IdiomKey, SplitName> assign_splits(std::span<const IdiomEntry> idioms,
                                            const SplitRatios& ratios,
                                            std::uint64_t seed) {
  const double sum = ratios.train + ratios.dev + ratios.test;
  if (ratios.train < 0 || ratios.dev < 0 || ratios.test < 0 ||
      std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "split ratios must be non-negative and sum to 1, got " << ratios.train
        << "/" << ratios.dev << "/" << ratios.test;
    throw Error(ErrorCode::kBadRatios, msg.str());
  }

  std::map<IdiomKey, SplitName> out;
  std::array<std::vector<std::string>, 2> labeled;
  for (const IdiomEntry& idiom : idioms) {
    const SplitName initial =
        idiom.labeled() ? SplitName::kTrain : SplitName::kUnlabelled;
    if (!out.emplace(key_of(idiom), initial).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate idiom in split assignment: " + describe(idiom));
    }
    if (idiom.labeled()) {
      labeled[static_cast<std::size_t>(idiom.language)].push_back(idiom.surface);
    }
  }

  // Guards against 0.2 * 10 landing at 1.9999999.
  const auto portion = [](std::size_t n, double ratio) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(n) * ratio + 1e-9));
  };
  for (Language language : {Language::kZh, Language::kEn}) {
    auto& surfaces = labeled[static_cast<std::size_t>(language)];
    std::sort(surfaces.begin(), surfaces.end());
    SeededRng rng(derive_seed(seed, "split/" + std::string(to_string(language))));
    rng.shuffle(std::span<std::string>(surfaces));
    const std::size_t n = surfaces.size();
    const std::size_t n_dev = portion(n, ratios.dev);
    const std::size_t n_test = portion(n, ratios.test);
    const std::size_t n_train = n - n_dev - n_test;
    for (std::size_t i = 0; i < n; ++i) {
      const SplitName split = i < n_train           ? SplitName::kTrain
                              : i < n_train + n_dev ? SplitName::kDev
                                                    : SplitName::kTest;
      out[{language, surfaces[i]}] = split;
    }
  }
  return out;
}

std::vector<DatasetEntry> build_entries(std::span<const IdiomEntry> idioms,
                                        std::span<const CorpusDocument> corpus,
                                        const std::map<IdiomKey, SplitName>& splits,
                                        std::size_t workers,
                                        const PronounOptions& options) {
  const auto hits = retrieve_all(idioms, corpus, workers, options);
  std::vector<DatasetEntry> entries;
  for (std::size_t i = 0; i < idioms.size(); ++i) {
    const auto split = splits.find(key_of(idioms[i]));
    if (split == splits.end()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "no split assigned for " + describe(idioms[i]));
    }
    for (std::size_t d : hits[i]) {
      entries.push_back({idioms[i], corpus[d], split->second});
    }
  }
  std::sort(entries.begin(), entries.end(), entry_less);
  return entries;
}

// ---------------------------------------------------------------------------
// Balancing

std::vector<DatasetEntry> balance_sample(std::span<const DatasetEntry> entries,
                                         const SamplingConfig& config) {
  std::map<IdiomKey, std::vector<const DatasetEntry*>> groups;
  for (const DatasetEntry& e : entries) groups[key_of(e.idiom)].push_back(&e);

  std::vector<DatasetEntry> out;
  for (auto& [key, rows] : groups) {
    std::sort(rows.begin(), rows.end(), [](const DatasetEntry* a, const DatasetEntry* b) {
      return a->passage.id < b->passage.id;
    });
    std::size_t keep = rows.size();
    if (config.k && *config.k < keep) {
      const std::string salt =
          std::string(to_string(key.first)) + '\x1f' + key.second;
      SeededRng rng(derive_seed(config.seed, salt));
      rng.shuffle(std::span<const DatasetEntry*>(rows));
      keep = *config.k;
    }
    for (std::size_t i = 0; i < keep; ++i) out.push_back(*rows[i]);
  }
  std::sort(out.begin(), out.end(), entry_less);
  return out;
}

// ---------------------------------------------------------------------------
// Statistics

const StatsCell* DatasetStats::find(Language language, SplitName split,
                                    std::optional<std::size_t> k) const {
  for (const StatsCell& c : cells) {
    if (c.language == language && c.split == split && c.k == k) return &c;
  }
  return nullptr;
}

std::string DatasetStats::to_csv() const {
  std::string out = "language,split,k,idioms,entries\n";
  for (const StatsCell& c : cells) {
    out += std::string(to_string(c.language)) + ',' + std::string(to_string(c.split)) +
           ',' + (c.k ? std::to_string(*c.k) : std::string("all")) + ',' +
           std::to_string(c.idiom_count) + ',' + std::to_string(c.entry_count) + '\n';
  }
  return out;
}

DatasetStats compute_stats(std::span<const DatasetEntry> entries,
                           std::span<const std::optional<std::size_t>> ks,
                           std::uint64_t seed) {
  struct Tally {
    std::set<std::string> idioms;
    std::size_t entries = 0;
  };
  // [k index][language][split]
  std::vector<std::array<std::array<Tally, 4>, 2>> tallies(ks.size());
  for (std::size_t ki = 0; ki < ks.size(); ++ki) {
    for (const DatasetEntry& e : balance_sample(entries, {ks[ki], seed})) {
      Tally& t = tallies[ki][static_cast<std::size_t>(e.idiom.language)]
                        [static_cast<std::size_t>(e.split)];
      t.idioms.insert(e.idiom.surface);
      ++t.entries;
    }
  }
  DatasetStats stats;
  for (Language language : {Language::kZh, Language::kEn}) {
    for (SplitName split : kAllSplits) {
      for (std::size_t ki = 0; ki < ks.size(); ++ki) {
        const Tally& t = tallies[ki][static_cast<std::size_t>(language)]
                                [static_cast<std::size_t>(split)];
        stats.cells.push_back({language, split, ks[ki], t.idioms.size(), t.entries});
      }
    }
  }
  return stats;
}

std::vector<std::optional<std::size_t>> parse_k_list(std::string_view s) {
  std::vector<std::optional<std::size_t>> out;
  for (const std::string& raw : text::split(s, ',')) {
    const std::string item = text::ascii_lower(text::trim(raw));
    if (item.empty()) continue;
    if (item == "all") {
      out.push_back(std::nullopt);
      continue;
    }
    std::size_t k = 0;
    std::size_t used = 0;
    try {
      if (item[0] < '0' || item[0] > '9') throw std::invalid_argument(item);
      k = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || k == 0) {
      throw Error(ErrorCode::kInvalidArgument, "K must be a positive integer or 'all': " + item);
    }
    out.push_back(k);
  }
  if (out.empty()) throw Error(ErrorCode::kInvalidArgument, "empty K list");
  return out;
}

}  // namespace idiomlex::dataset
