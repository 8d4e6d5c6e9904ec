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

#include "idiomlex/chains/voting.h"

#include <algorithm>

namespace idiomlex::chains {

SentimentLabel decide(const VoteTally& tally) {
  if (tally.total() == 0) {
    throw Error(ErrorCode::kNoVotes, "every sample was unparseable; nothing to vote on");
  }
  const int best = *std::max_element(tally.counts.begin(), tally.counts.end());
  int leaders = 0;
  SentimentLabel winner = SentimentLabel::kNeutral;
  for (SentimentLabel label : kAllLabels) {
    if (tally.count(label) == best) {
      ++leaders;
      winner = label;
    }
  }
  // A tie means the evidence conflicts; a lexicon should not assert polarity.
  return leaders == 1 ? winner : SentimentLabel::kNeutral;
}

std::pair<SentimentLabel, VoteTally> tally_labels(std::span<const SentimentLabel> labels) {
  VoteTally tally;
  for (SentimentLabel l : labels) ++tally.counts[static_cast<std::size_t>(l)];
  return {decide(tally), tally};
}

std::pair<SentimentLabel, VoteTally> tally_votes(std::span<const ChainPrediction> predictions) {
  VoteTally tally;
  for (const ChainPrediction& p : predictions) {
    if (p.label) ++tally.counts[static_cast<std::size_t>(*p.label)];
  }
  return {decide(tally), tally};
}

}  // namespace idiomlex::chains
