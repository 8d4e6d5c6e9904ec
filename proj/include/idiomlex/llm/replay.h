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
#include <map>
#include <string>

#include "idiomlex/llm/backend.h"

namespace idiomlex::llm {

// Human-readable request identity used by replay fixtures: the message list
// plus sample_index. Model and temperature are left out so a fixture recorded
// against one model name replays under another.
nlohmann::json request_fingerprint(const ChatRequest& request);

// One fixture line: {"fingerprint": ..., "response": ..., "step": ...}.
nlohmann::json fixture_line(const ChatRequest& request, std::string_view response);

// Answers only from a fixture file and never touches the network. Lines are
// either {"fingerprint": {...}, "response": "..."} or
// {"key": "<cache key hex>", "response": "..."}.
class ReplayBackend : public ChatBackend {
 public:
  // Throws kIoFailure, kMalformedLine.
  static std::shared_ptr<ReplayBackend> load(const std::filesystem::path& path,
                                             std::string id = "replay");

  // Throws Error{kMissingFixture} for an unknown request.
  BackendResponse complete(const ChatRequest& request) override;
  std::string id() const override { return id_; }

  std::size_t size() const { return by_fingerprint_.size() + by_key_.size(); }

 private:
  std::string id_;
  std::map<std::string, std::string> by_fingerprint_;
  std::map<std::string, std::string> by_key_;
};

}  // namespace idiomlex::llm
