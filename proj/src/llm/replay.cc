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

#include "idiomlex/llm/replay.h"

#include "idiomlex/error.h"
#include "idiomlex/jsonl.h"
#include "idiomlex/llm/cache.h"
#include "idiomlex/text.h"

namespace idiomlex::llm {

nlohmann::json request_fingerprint(const ChatRequest& request) {
  return {{"messages", messages_to_json(request.messages)},
          {"sample_index", request.params.sample_index}};
}

nlohmann::json fixture_line(const ChatRequest& request, std::string_view response) {
  return {{"fingerprint", request_fingerprint(request)},
          {"response", response},
          {"step", request.step}};
}

std::shared_ptr<ReplayBackend> ReplayBackend::load(const std::filesystem::path& path,
                                                   std::string id) {
  auto backend = std::shared_ptr<ReplayBackend>(new ReplayBackend());
  backend->id_ = std::move(id);
  jsonl::for_each_line(path, [&](const nlohmann::json& j, std::size_t) {
    if (!j.is_object() || !j.contains("response") || !j["response"].is_string()) {
      throw Error(ErrorCode::kMalformedLine, "fixture line needs a string \"response\"");
    }
    const std::string response = j["response"].get<std::string>();
    std::map<std::string, std::string>* table = nullptr;
    std::string id_text;
    if (j.contains("fingerprint")) {
      // Round-trip through ChatRequest so key order and escapes are canonical.
      const auto& fp = j["fingerprint"];
      if (!fp.is_object() || !fp.contains("messages")) {
        throw Error(ErrorCode::kMalformedLine, "fingerprint needs \"messages\"");
      }
      ChatRequest r;
      r.messages = messages_from_json(fp["messages"]);
      r.params.sample_index = fp.value("sample_index", 0);
      id_text = jsonl::dump(request_fingerprint(r));
      table = &backend->by_fingerprint_;
    } else if (j.contains("key") && j["key"].is_string()) {
      id_text = j["key"].get<std::string>();
      table = &backend->by_key_;
    } else {
      throw Error(ErrorCode::kMalformedLine, "fixture line needs \"fingerprint\" or \"key\"");
    }
    auto [it, inserted] = table->emplace(id_text, response);
    if (!inserted && it->second != response) {
      throw Error(ErrorCode::kMalformedLine, "fixture has two different responses for one request");
    }
  });
  return backend;
}

BackendResponse ReplayBackend::complete(const ChatRequest& request) {
  request.validate();
  BackendResponse r;
  r.backend_id = id_;
  if (!by_key_.empty()) {
    const auto it = by_key_.find(cache_key(request, id_).hex);
    if (it != by_key_.end()) {
      r.text = it->second;
      return r;
    }
  }
  const std::string fp = jsonl::dump(request_fingerprint(request));
  const auto it = by_fingerprint_.find(fp);
  if (it == by_fingerprint_.end()) {
    throw Error(ErrorCode::kMissingFixture,
                "no replay answer for step '" + request.step + "' (sample " +
                    std::to_string(request.params.sample_index) + "): " +
                    std::string(text::truncate_utf8(request.messages.back().content, 160)));
  }
  r.text = it->second;
  return r;
}

}  // namespace idiomlex::llm
