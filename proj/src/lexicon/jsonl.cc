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

#include "idiomlex/jsonl.h"

#include <fstream>

#include "idiomlex/error.h"
#include "idiomlex/text.h"

namespace idiomlex::jsonl {

std::string dump(const nlohmann::json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

void for_each_line(
    const std::filesystem::path& path,
    const std::function<void(const nlohmann::json&, std::size_t)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoFailure, "cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedLine, where + "invalid JSON");
    }
    try {
      fn(record, line_no);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kMalformedLine) throw;
      throw Error(ErrorCode::kMalformedLine, where + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedLine, where + e.what());
    }
  }
  if (in.bad()) throw Error(ErrorCode::kIoFailure, "read failed: " + path.string());
}

}  // namespace idiomlex::jsonl
