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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace idiomlex {

// Every failure surfaced by the library carries one of these codes. The CLI
// prints the code name verbatim, so renaming an enumerator is a breaking
// change for scripts that parse stderr.
enum class ErrorCode {
  kInvalidArgument,
  kUnparseable,
  kEmptyAnnotation,
  kMalformedLine,
  kConflictUnresolved,
  kBadRatios,
  kIoFailure,
  kRateLimited,
  kTruncated,
  kTransportFailure,
  kAuthMissing,
  kMissingFixture,
  kTemplateError,
  kAllUnparseable,
  kGenerationEmpty,
  kOriginEmpty,
  kNoVotes,
  kEmptyInput,
  kLengthMismatch,
  kBadLabel,
  kConfigInvalid,
};

std::string_view error_code_name(ErrorCode code);
std::optional<ErrorCode> error_code_from_name(std::string_view name);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace idiomlex
