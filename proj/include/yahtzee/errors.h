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

#ifndef YAHTZEE_ERRORS_H_
#define YAHTZEE_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace yahtzee {

enum class ErrorCode {
  kEmptyName,
  kInvalidIdentity,
  kConfig,
  kConfigMismatch,
  kParamsMismatch,
  kEmptyTable,
  kDuplicateRound,
  kDomain,
  kEmptyDraws,
  kQuotaNotMet,
  kLengthMismatch,
  kTargetUnreachable,
  kMissingTruth,
  kFileFormat,
  kEmptyRegistry,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception; `code()` lets
// callers (the CLI in particular) dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace yahtzee

#endif  // YAHTZEE_ERRORS_H_
