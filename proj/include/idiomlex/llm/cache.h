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
#include <memory>
#include <optional>
#include <string>

#include "idiomlex/llm/backend.h"

namespace idiomlex::llm {

// SHA-256 over a canonical JSON encoding of (backend_id, model, messages,
// temperature, max_tokens, sample_index), as lowercase hex.
struct CacheKey {
  std::string hex;

  bool operator==(const CacheKey&) const = default;
  auto operator<=>(const CacheKey&) const = default;
};

CacheKey cache_key(const ChatRequest& request, std::string_view backend_id);

// The exact bytes that get hashed; exposed for debugging and tests.
std::string cache_key_material(const ChatRequest& request,
                               std::string_view backend_id);

std::string sha256_hex(std::string_view data);

struct CacheStats {
  std::size_t entries = 0;
  std::uintmax_t bytes = 0;
};

// One JSON file per key at <dir>/<hex[0:2]>/<hex>.json. Writes go through a
// temporary file and a rename, so concurrent readers see either nothing or a
// complete entry.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  std::optional<std::string> get(const CacheKey& key) const;
  void put(const CacheKey& key, const ChatRequest& request,
           std::string_view backend_id, std::string_view response);

  CacheStats stats() const;
  // Removes every entry; returns how many were deleted.
  std::size_t clear();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const CacheKey& key) const;

 private:
  std::filesystem::path dir_;
};

class CachingBackend : public ChatBackend {
 public:
  CachingBackend(std::shared_ptr<ChatBackend> inner,
                 std::shared_ptr<ResponseCache> cache)
      : inner_(std::move(inner)), cache_(std::move(cache)) {}

  BackendResponse complete(const ChatRequest& request) override;
  std::string id() const override { return inner_->id(); }

  std::uint64_t hits() const { return hits_.load(); }
  std::uint64_t misses() const { return misses_.load(); }

 private:
  std::shared_ptr<ChatBackend> inner_;
  std::shared_ptr<ResponseCache> cache_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

}  // namespace idiomlex::llm
