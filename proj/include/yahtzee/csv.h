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

#ifndef YAHTZEE_CSV_H_
#define YAHTZEE_CSV_H_

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace yahtzee::csv {

// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> SplitLine(std::string_view line);

// Quotes a field only when it contains a comma, quote, or backslash.
std::string Field(std::string_view value);

// Reads the next line without its terminator ('\r' tolerated). Returns false
// at end of stream.
bool NextLine(std::istream& in, std::string& line);

// Consumes the header line and checks it against `expected`, accepting the
// listed optional trailing columns. Returns the number of columns present.
// Throws Error(kFileFormat) on mismatch.
std::size_t ExpectHeader(std::istream& in,
                         const std::vector<std::string>& expected,
                         const std::vector<std::string>& optional = {});

// Flat "key=value" files used for the small aggregate reports that cross
// the party boundary. Blank lines and '#' comments are skipped.
std::map<std::string, std::string> ReadKeyValues(std::istream& in);
void WriteKeyValues(std::ostream& out,
                    const std::vector<std::pair<std::string, std::string>>& kv);

}  // namespace yahtzee::csv

#endif  // YAHTZEE_CSV_H_
