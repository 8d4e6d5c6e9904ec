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

#include <span>
#include <utility>

#include "idiomlex/chains/transcript.h"

namespace idiomlex::chains {

// Plurality vote over the parsed predictions; unparsed slots are skipped.
// Any tie for the lead resolves to neutral. Throws Error{kNoVotes} when no
// prediction carries a label.
std::pair<SentimentLabel, VoteTally> tally_votes(std::span<const ChainPrediction> predictions);

// Same rule over bare labels.
std::pair<SentimentLabel, VoteTally> tally_labels(std::span<const SentimentLabel> labels);

// Winner for a finished tally. Throws kNoVotes on an empty tally.
SentimentLabel decide(const VoteTally& tally);

}  // namespace idiomlex::chains
