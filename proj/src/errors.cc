// Copyright 2026 The Yahtzee Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "yahtzee/errors.h"

namespace yahtzee {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyName: return "EmptyName";
    case ErrorCode::kInvalidIdentity: return "InvalidIdentity";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kConfigMismatch: return "ConfigMismatch";
    case ErrorCode::kParamsMismatch: return "ParamsMismatch";
    case ErrorCode::kEmptyTable: return "EmptyTable";
    case ErrorCode::kDuplicateRound: return "DuplicateRound";
    case ErrorCode::kDomain: return "DomainError";
    case ErrorCode::kEmptyDraws: return "EmptyDraws";
    case ErrorCode::kQuotaNotMet: return "QuotaNotMet";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kTargetUnreachable: return "TargetUnreachable";
    case ErrorCode::kMissingTruth: return "MissingTruth";
    case ErrorCode::kFileFormat: return "FileFormat";
    case ErrorCode::kEmptyRegistry: return "EmptyRegistry";
  }
  return "Unknown";
}

}  // namespace yahtzee
