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

#include "idiomlex/error.h"

namespace idiomlex {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnparseable: return "Unparseable";
    case ErrorCode::kEmptyAnnotation: return "EmptyAnnotation";
    case ErrorCode::kMalformedLine: return "MalformedLine";
    case ErrorCode::kConflictUnresolved: return "ConflictUnresolved";
    case ErrorCode::kBadRatios: return "BadRatios";
    case ErrorCode::kIoFailure: return "IoFailure";
    case ErrorCode::kRateLimited: return "RateLimited";
    case ErrorCode::kTruncated: return "Truncated";
    case ErrorCode::kTransportFailure: return "TransportFailure";
    case ErrorCode::kAuthMissing: return "AuthMissing";
    case ErrorCode::kMissingFixture: return "MissingFixture";
    case ErrorCode::kTemplateError: return "TemplateError";
    case ErrorCode::kAllUnparseable: return "AllUnparseable";
    case ErrorCode::kGenerationEmpty: return "GenerationEmpty";
    case ErrorCode::kOriginEmpty: return "OriginEmpty";
    case ErrorCode::kNoVotes: return "NoVotes";
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kBadLabel: return "BadLabel";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

std::optional<ErrorCode> error_code_from_name(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(ErrorCode::kConfigInvalid); ++i) {
    const auto code = static_cast<ErrorCode>(i);
    if (error_code_name(code) == name) return code;
  }
  return std::nullopt;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

}  // namespace idiomlex
