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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace idiomlex::llm {

enum class Role { kSystem, kUser, kAssistant };

std::string_view to_string(Role role);
std::optional<Role> role_from_string(std::string_view s);

struct ChatMessage {
  Role role = Role::kUser;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct GenerationParams {
  std::string model;
  double temperature = 0.0;  // [0, 2]
  int max_tokens = 256;      // > 0
  int sample_index = 0;      // distinguishes repeated draws of one prompt

  bool operator==(const GenerationParams&) const = default;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  GenerationParams params;
  // Pipeline step that issued the request, e.g. "dualcots/literal_judge".
  // Diagnostic only: not part of the cache key or the replay fingerprint.
  std::string step;

  // Throws Error{kInvalidArgument}.
  void validate() const;

  bool operator==(const ChatRequest&) const = default;
};

struct BackendResponse {
  std::string text;
  std::string backend_id;
  bool cached = false;
  std::int64_t latency_ms = 0;
};

nlohmann::json messages_to_json(const std::vector<ChatMessage>& messages);
std::vector<ChatMessage> messages_from_json(const nlohmann::json& j);
nlohmann::json request_to_json(const ChatRequest& request);
ChatRequest request_from_json(const nlohmann::json& j);

// Every backend must be safe to call from several threads at once.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;

  virtual BackendResponse complete(const ChatRequest& request) = 0;

  // Stable identifier; part of every cache key.
  virtual std::string id() const = 0;
};

// Answers from a callback. Used for scripted scenarios and tests.
class ScriptedBackend : public ChatBackend {
 public:
  using Script = std::function<std::string(const ChatRequest&)>;

  ScriptedBackend(std::string id, Script script)
      : id_(std::move(id)), script_(std::move(script)) {}

  BackendResponse complete(const ChatRequest& request) override;
  std::string id() const override { return id_; }

 private:
  std::string id_;
  Script script_;
};

// Counts calls that reach the wrapped backend.
class CountingBackend : public ChatBackend {
 public:
  explicit CountingBackend(std::shared_ptr<ChatBackend> inner)
      : inner_(std::move(inner)) {}

  BackendResponse complete(const ChatRequest& request) override;
  std::string id() const override { return inner_->id(); }

  std::uint64_t calls() const { return calls_.load(); }

 private:
  std::shared_ptr<ChatBackend> inner_;
  std::atomic<std::uint64_t> calls_{0};
};

// Passes requests through and remembers every (request, reply) pair so a
// run can be saved as a replay fixture.
class RecordingBackend : public ChatBackend {
 public:
  explicit RecordingBackend(std::shared_ptr<ChatBackend> inner)
      : inner_(std::move(inner)) {}

  BackendResponse complete(const ChatRequest& request) override;
  std::string id() const override { return inner_->id(); }

  // Fixture lines sorted by fingerprint, duplicates dropped.
  std::string fixture_text() const;
  void write_fixture(const std::filesystem::path& path) const;

 private:
  std::shared_ptr<ChatBackend> inner_;
  mutable std::mutex mu_;
  std::vector<std::pair<ChatRequest, std::string>> recorded_;
};

}  // namespace idiomlex::llm
