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

#include "idiomlex/llm/cache.h"

#include <openssl/evp.h>

#include <array>
#include <memory>
#include <system_error>

#include "idiomlex/error.h"
#include "idiomlex/jsonl.h"
#include "idiomlex/text.h"

namespace idiomlex::llm {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                              &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    throw Error(ErrorCode::kIoFailure, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

std::string cache_key_material(const ChatRequest& request,
                               std::string_view backend_id) {
  const nlohmann::json j = {{"backend_id", backend_id},
                            {"model", request.params.model},
                            {"messages", messages_to_json(request.messages)},
                            {"temperature", request.params.temperature},
                            {"max_tokens", request.params.max_tokens},
                            {"sample_index", request.params.sample_index}};
  return jsonl::dump(j);
}

CacheKey cache_key(const ChatRequest& request, std::string_view backend_id) {
  return {sha256_hex(cache_key_material(request, backend_id))};
}

ResponseCache::ResponseCache(fs::path dir) : dir_(std::move(dir)) {}

fs::path ResponseCache::path_for(const CacheKey& key) const {
  return dir_ / key.hex.substr(0, 2) / (key.hex + ".json");
}

std::optional<std::string> ResponseCache::get(const CacheKey& key) const {
  const fs::path path = path_for(key);
  std::error_code ec;
  if (!fs::exists(path, ec)) return std::nullopt;
  const std::string raw = text::read_file(path);
  const auto j = nlohmann::json::parse(raw, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object() || !j.contains("response") ||
      !j["response"].is_string() || j.value("key", "") != key.hex) {
    throw Error(ErrorCode::kIoFailure, "corrupt cache entry: " + path.string());
  }
  return j["response"].get<std::string>();
}

void ResponseCache::put(const CacheKey& key, const ChatRequest& request,
                        std::string_view backend_id, std::string_view response) {
  const fs::path path = path_for(key);
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) {
    throw Error(ErrorCode::kIoFailure,
                "cannot create cache directory " + path.parent_path().string() + ": " +
                    ec.message());
  }
  const nlohmann::json j = {{"key", key.hex},
                            {"backend_id", backend_id},
                            {"request", request_to_json(request)},
                            {"response", response}};
  text::write_file_atomic(path, jsonl::dump(j) + "\n");
}

namespace {

bool is_entry(const fs::directory_entry& e) {
  return e.is_regular_file() && e.path().extension() == ".json" &&
         e.path().stem().string().size() == 64;
}

}  // namespace

CacheStats ResponseCache::stats() const {
  CacheStats s;
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return s;
  for (const auto& e : fs::recursive_directory_iterator(dir_)) {
    if (!is_entry(e)) continue;
    ++s.entries;
    s.bytes += e.file_size();
  }
  return s;
}

std::size_t ResponseCache::clear() {
  std::error_code ec;
  if (!fs::is_directory(dir_, ec)) return 0;
  std::vector<fs::path> doomed;
  for (const auto& e : fs::recursive_directory_iterator(dir_)) {
    if (is_entry(e)) doomed.push_back(e.path());
  }
  for (const auto& p : doomed) {
    if (!fs::remove(p, ec) && ec) {
      throw Error(ErrorCode::kIoFailure, "cannot remove " + p.string() + ": " + ec.message());
    }
    fs::remove(p.parent_path(), ec);  // only succeeds once the bucket is empty
  }
  return doomed.size();
}

BackendResponse CachingBackend::complete(const ChatRequest& request) {
  request.validate();
  const CacheKey key = cache_key(request, inner_->id());
  if (auto hit = cache_->get(key)) {
    hits_.fetch_add(1);
    BackendResponse r;
    r.text = std::move(*hit);
    r.backend_id = inner_->id();
    r.cached = true;
    return r;
  }
  misses_.fetch_add(1);
  BackendResponse r = inner_->complete(request);
  cache_->put(key, request, r.backend_id, r.text);
  return r;
}

}  // namespace idiomlex::llm
