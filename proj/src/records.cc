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

#include "yahtzee/records.h"

#include <cctype>
#include <charconv>
#include <unordered_set>

#include "fmt/format.h"
#include "yahtzee/csv.h"
#include "yahtzee/errors.h"

namespace yahtzee {

namespace {

const std::vector<std::string> kRegistryHeader = {
    "first_name", "last_name", "birth_day", "birth_month", "birth_year",
    "voted"};
const std::vector<std::string> kPlatformHeader = {
    "user_id", "name", "birth_day", "birth_month", "birth_year"};

int ToInt(const std::string& s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kInvalidIdentity, fmt::format("bad integer '{}'", s));
  }
  return v;
}

// Voter files carry separate name columns; multi-word values are reduced the
// same way the platform reduces its single name column.
std::string PickToken(std::string_view field, bool last) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < field.size()) {
    while (i < field.size() && std::isspace(static_cast<unsigned char>(field[i]))) ++i;
    const std::size_t start = i;
    while (i < field.size() && !std::isspace(static_cast<unsigned char>(field[i]))) ++i;
    if (i > start) tokens.push_back(field.substr(start, i - start));
  }
  if (tokens.empty()) throw Error(ErrorCode::kEmptyName, "empty name field");
  std::string out = CanonicalizeToken(last ? tokens.back() : tokens.front());
  if (out.empty()) throw Error(ErrorCode::kEmptyName, "empty name field");
  return out;
}

bool IsRowError(ErrorCode code) {
  return code == ErrorCode::kEmptyName || code == ErrorCode::kInvalidIdentity;
}

}  // namespace

LoadedRecords<RegistryRecord> LoadRegistryCsv(std::istream& in) {
  csv::ExpectHeader(in, kRegistryHeader);
  std::vector<RegistryRecord> parsed;
  DropStats stats;
  std::string line;
  while (csv::NextLine(in, line)) {
    if (line.empty()) continue;
    ++stats.input_rows;
    try {
      const auto f = csv::SplitLine(line);
      if (f.size() != kRegistryHeader.size() || (f[5] != "0" && f[5] != "1")) {
        ++stats.unparseable;
        continue;
      }
      parsed.push_back(RegistryRecord{
          CanonicalIdentity::Create(PickToken(f[0], false),
                                    PickToken(f[1], true), ToInt(f[2]),
                                    ToInt(f[3]), ToInt(f[4])),
          f[5] == "1"});
    } catch (const Error& e) {
      if (!IsRowError(e.code()) && e.code() != ErrorCode::kFileFormat) throw;
      ++stats.unparseable;
    }
  }
  auto dedup = Deduplicate(std::move(parsed),
                           [](const RegistryRecord& r) -> const CanonicalIdentity& {
                             return r.identity;
                           });
  stats.duplicate = dedup.dropped;
  stats.retained = dedup.retained.size();
  return {std::move(dedup.retained), stats};
}

LoadedRecords<PlatformRecord> LoadPlatformCsv(std::istream& in) {
  const std::size_t cols = csv::ExpectHeader(in, kPlatformHeader, {"attribute"});
  std::vector<PlatformRecord> parsed;
  DropStats stats;
  std::unordered_set<std::string> user_ids;
  std::string line;
  while (csv::NextLine(in, line)) {
    if (line.empty()) continue;
    ++stats.input_rows;
    std::vector<std::string> f;
    try {
      f = csv::SplitLine(line);
    } catch (const Error&) {
      ++stats.unparseable;
      continue;
    }
    if (f.size() != cols || f[0].empty()) {
      ++stats.unparseable;
      continue;
    }
    if (!user_ids.insert(f[0]).second) {
      throw Error(ErrorCode::kFileFormat,
                  fmt::format("duplicate user_id '{}'", f[0]));
    }
    try {
      NameTokens name = CanonicalizeName(f[1]);
      parsed.push_back(PlatformRecord{
          f[0],
          CanonicalIdentity::Create(std::move(name.first_name),
                                    std::move(name.last_name), ToInt(f[2]),
                                    ToInt(f[3]), ToInt(f[4])),
          cols > kPlatformHeader.size() ? f[5] : std::string()});
    } catch (const Error& e) {
      if (!IsRowError(e.code())) throw;
      ++stats.unparseable;
    }
  }
  auto dedup = Deduplicate(std::move(parsed),
                           [](const PlatformRecord& r) -> const CanonicalIdentity& {
                             return r.identity;
                           });
  stats.duplicate = dedup.dropped;
  stats.retained = dedup.retained.size();
  return {std::move(dedup.retained), stats};
}

void WriteRegistryCsv(std::ostream& out,
                      std::span<const RegistryRecord> records) {
  out << fmt::format("{}\n", fmt::join(kRegistryHeader, ","));
  for (const RegistryRecord& r : records) {
    const CanonicalIdentity& id = r.identity;
    out << csv::Field(id.first_name()) << ',' << csv::Field(id.last_name())
        << ',' << id.birth_day() << ',' << id.birth_month() << ','
        << id.birth_year() << ',' << (r.voted ? 1 : 0) << '\n';
  }
}

void WritePlatformCsv(std::ostream& out,
                      std::span<const PlatformRecord> records) {
  out << fmt::format("{},attribute\n", fmt::join(kPlatformHeader, ","));
  for (const PlatformRecord& r : records) {
    const CanonicalIdentity& id = r.identity;
    out << csv::Field(r.user_id) << ','
        << csv::Field(id.first_name() + " " + id.last_name()) << ','
        << id.birth_day() << ',' << id.birth_month() << ',' << id.birth_year()
        << ',' << csv::Field(r.attribute) << '\n';
  }
}

void WriteDropStats(std::ostream& out, const DropStats& stats) {
  out << "reason,count\n"
      << "input_rows," << stats.input_rows << '\n'
      << "unparseable," << stats.unparseable << '\n'
      << "duplicate," << stats.duplicate << '\n'
      << "retained," << stats.retained << '\n';
}

double Turnout(std::span<const RegistryRecord> records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyRegistry, "no records");
  std::size_t voters = 0;
  for (const RegistryRecord& r : records) voters += r.voted ? 1 : 0;
  return static_cast<double>(voters) / static_cast<double>(records.size());
}

std::vector<std::string> SerializeIdentities(
    std::span<const RegistryRecord> records) {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const RegistryRecord& r : records) out.push_back(r.identity.Serialize());
  return out;
}

std::vector<std::string> SerializeIdentities(
    std::span<const PlatformRecord> records) {
  std::vector<std::string> out;
  out.reserve(records.size());
  for (const PlatformRecord& r : records) out.push_back(r.identity.Serialize());
  return out;
}

}  // namespace yahtzee
