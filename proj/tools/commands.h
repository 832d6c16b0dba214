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

#ifndef YAHTZEE_TOOLS_COMMANDS_H_
#define YAHTZEE_TOOLS_COMMANDS_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace yahtzee::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitFileFormat = 2,
  kExitParamsMismatch = 3,
  kExitQuotaNotMet = 4,
  kExitTargetUnreachable = 5,
  kExitConfig = 6,
  kExitDuplicateRound = 7,
};

// Runs one invocation. `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace yahtzee::cli

#endif  // YAHTZEE_TOOLS_COMMANDS_H_
