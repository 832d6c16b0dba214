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

#include "yahtzee/csv.h"

#include <boost/tokenizer.hpp>

#include "fmt/format.h"
#include "yahtzee/errors.h"

namespace yahtzee::csv {

std::vector<std::string> SplitLine(std::string_view line) {
  using Tokenizer =
      boost::tokenizer<boost::escaped_list_separator<char>,
                       std::string_view::const_iterator, std::string>;
  std::vector<std::string> out;
  try {
    Tokenizer tok(line.begin(), line.end(),
                  boost::escaped_list_separator<char>('\\', ',', '"'));
    out.assign(tok.begin(), tok.end());
  } catch (const boost::escaped_list_error& e) {
    throw Error(ErrorCode::kFileFormat,
                fmt::format("bad CSV line '{}': {}", line, e.what()));
  }
  return out;
}

std::string Field(std::string_view value) {
  if (value.find_first_of(",\"\\") == std::string_view::npos) {
    return std::string(value);
  }
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

bool NextLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::size_t ExpectHeader(std::istream& in,
                         const std::vector<std::string>& expected,
                         const std::vector<std::string>& optional) {
  std::string line;
  if (!NextLine(in, line)) {
    throw Error(ErrorCode::kFileFormat, "missing header line");
  }
  const std::vector<std::string> got = SplitLine(line);
  const std::size_t max_cols = expected.size() + optional.size();
  bool ok = got.size() >= expected.size() && got.size() <= max_cols;
  for (std::size_t i = 0; ok && i < got.size(); ++i) {
    const std::string& want = i < expected.size()
                                  ? expected[i]
                                  : optional[i - expected.size()];
    ok = got[i] == want;
  }
  if (!ok) {
    throw Error(ErrorCode::kFileFormat,
                fmt::format("unexpected header '{}', want '{}'", line,
                            fmt::join(expected, ",")));
  }
  return got.size();
}

std::map<std::string, std::string> ReadKeyValues(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  while (NextLine(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::kFileFormat,
                  fmt::format("expected key=value, got '{}'", line));
    }
    out[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return out;
}

void WriteKeyValues(
    std::ostream& out,
    const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
}

}  // namespace yahtzee::csv
