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

#include "idiomlex/llm/backend.h"

#include <algorithm>
#include <chrono>

#include "idiomlex/error.h"
#include "idiomlex/jsonl.h"
#include "idiomlex/llm/replay.h"
#include "idiomlex/text.h"

namespace idiomlex::llm {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::kSystem:
      return "system";
    case Role::kUser:
      return "user";
    case Role::kAssistant:
      return "assistant";
  }
  return "user";
}

std::optional<Role> role_from_string(std::string_view s) {
  if (s == "system") return Role::kSystem;
  if (s == "user") return Role::kUser;
  if (s == "assistant") return Role::kAssistant;
  return std::nullopt;
}

void ChatRequest::validate() const {
  if (messages.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "chat request has no messages");
  }
  if (messages.back().role != Role::kUser) {
    throw Error(ErrorCode::kInvalidArgument, "last chat message must come from the user");
  }
  for (const ChatMessage& m : messages) {
    if (m.role != Role::kSystem && text::trim(m.content).empty()) {
      throw Error(ErrorCode::kInvalidArgument,
                  std::string(to_string(m.role)) + " message has empty content");
    }
  }
  if (!(params.temperature >= 0.0 && params.temperature <= 2.0)) {
    throw Error(ErrorCode::kInvalidArgument, "temperature must lie in [0, 2]");
  }
  if (params.max_tokens <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "max_tokens must be positive");
  }
  if (params.sample_index < 0) {
    throw Error(ErrorCode::kInvalidArgument, "sample_index must be non-negative");
  }
}

nlohmann::json messages_to_json(const std::vector<ChatMessage>& messages) {
  nlohmann::json out = nlohmann::json::array();
  for (const ChatMessage& m : messages) {
    out.push_back({{"role", to_string(m.role)}, {"content", m.content}});
  }
  return out;
}

std::vector<ChatMessage> messages_from_json(const nlohmann::json& j) {
  if (!j.is_array()) {
    throw Error(ErrorCode::kMalformedLine, "messages must be an array");
  }
  std::vector<ChatMessage> out;
  for (const auto& m : j) {
    if (!m.is_object() || !m.contains("role") || !m.contains("content") ||
        !m["role"].is_string() || !m["content"].is_string()) {
      throw Error(ErrorCode::kMalformedLine, "message needs string role and content");
    }
    const auto role = role_from_string(m["role"].get<std::string>());
    if (!role) {
      throw Error(ErrorCode::kMalformedLine,
                  "unknown message role: " + m["role"].get<std::string>());
    }
    out.push_back({*role, m["content"].get<std::string>()});
  }
  return out;
}

nlohmann::json request_to_json(const ChatRequest& request) {
  return {{"step", request.step},
          {"messages", messages_to_json(request.messages)},
          {"model", request.params.model},
          {"temperature", request.params.temperature},
          {"max_tokens", request.params.max_tokens},
          {"sample_index", request.params.sample_index}};
}

ChatRequest request_from_json(const nlohmann::json& j) {
  try {
    ChatRequest r;
    r.step = j.value("step", "");
    r.messages = messages_from_json(j.at("messages"));
    r.params.model = j.at("model").get<std::string>();
    r.params.temperature = j.at("temperature").get<double>();
    r.params.max_tokens = j.at("max_tokens").get<int>();
    r.params.sample_index = j.at("sample_index").get<int>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kMalformedLine, std::string("bad request record: ") + e.what());
  }
}

BackendResponse ScriptedBackend::complete(const ChatRequest& request) {
  request.validate();
  const auto start = std::chrono::steady_clock::now();
  BackendResponse r;
  r.text = script_(request);
  r.backend_id = id_;
  r.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

BackendResponse CountingBackend::complete(const ChatRequest& request) {
  calls_.fetch_add(1);
  return inner_->complete(request);
}

BackendResponse RecordingBackend::complete(const ChatRequest& request) {
  BackendResponse r = inner_->complete(request);
  std::lock_guard lock(mu_);
  recorded_.emplace_back(request, r.text);
  return r;
}

std::string RecordingBackend::fixture_text() const {
  std::vector<std::string> lines;
  {
    std::lock_guard lock(mu_);
    for (const auto& [request, reply] : recorded_) {
      lines.push_back(jsonl::dump(fixture_line(request, reply)));
    }
  }
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + '\n';
  return out;
}

void RecordingBackend::write_fixture(const std::filesystem::path& path) const {
  text::write_file_atomic(path, fixture_text());
}

}  // namespace idiomlex::llm
