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

#include "yahtzee/grouping.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "fmt/format.h"
#include "yahtzee/csv.h"
#include "yahtzee/errors.h"
#include "yahtzee/kernels.h"

namespace yahtzee {

namespace {

std::uint64_t ParseU64(std::string_view s, std::string_view what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kFileFormat,
                fmt::format("bad {} '{}' in group table", what, s));
  }
  return v;
}

}  // namespace

GroupParams GroupParams::Create(std::uint64_t n_registry, std::uint32_t g) {
  if (g < 2) {
    throw Error(ErrorCode::kConfig, fmt::format("group size g={} < 2", g));
  }
  GroupParams p{n_registry, g, n_registry / g};
  if (p.divisor < 1) {
    throw Error(ErrorCode::kConfig,
                fmt::format("n_registry={} too small for g={}", n_registry, g));
  }
  if (p.divisor >= kHashModulus) {
    throw Error(ErrorCode::kConfig,
                fmt::format("divisor {} does not fit the 28-bit hash range",
                            p.divisor));
  }
  return p;
}

std::optional<std::uint32_t> GroupCountTable::Lookup(
    std::uint32_t group_id) const {
  auto it = std::lower_bound(
      groups.begin(), groups.end(), group_id,
      [](const GroupCount& gc, std::uint32_t id) { return gc.group_id < id; });
  if (it == groups.end() || it->group_id != group_id) return std::nullopt;
  return it->voter_count;
}

RegistryIndex RegistryIndex::Build(std::span<const RegistryRecord> records) {
  RegistryIndex index;
  index.keys = SerializeIdentities(records);
  index.voted.reserve(records.size());
  for (const RegistryRecord& r : records) index.voted.push_back(r.voted ? 1 : 0);
  return index;
}

GroupCountTable BuildGroupTable(const RegistryIndex& registry,
                                const RoundSeed& seed,
                                const GroupParams& params) {
  if (params.n_registry != registry.size()) {
    throw Error(ErrorCode::kConfig,
                fmt::format("params.n_registry={} but registry has {} records",
                            params.n_registry, registry.size()));
  }
  if (params.g < 2 || params.divisor != params.n_registry / params.g ||
      params.divisor < 1 || params.divisor >= kHashModulus) {
    throw Error(ErrorCode::kConfig, "inconsistent group params");
  }
  std::vector<std::uint32_t> ids(registry.size());
  kernels::HashGroupIds(registry.keys, seed.salt, params.divisor, ids);

  // Occupancy merge. Assignments are dropped once counted.
  std::vector<std::uint32_t> members(params.divisor, 0);
  std::vector<std::uint32_t> voters(params.divisor, 0);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    ++members[ids[i]];
    voters[ids[i]] += registry.voted[i];
  }

  GroupCountTable table;
  table.round_index = seed.round_index;
  table.params = params;
  table.salt_id = seed.Label();
  for (std::uint32_t id = 0; id < params.divisor; ++id) {
    if (members[id] == params.g) table.groups.push_back({id, voters[id]});
  }
  return table;
}

GroupCountTable BuildGroupTable(std::span<const RegistryRecord> registry,
                                const RoundSeed& seed,
                                const GroupParams& params) {
  return BuildGroupTable(RegistryIndex::Build(registry), seed, params);
}

GroupTableStats TableStats(const GroupCountTable& table) {
  if (table.groups.empty()) {
    throw Error(ErrorCode::kEmptyTable,
                fmt::format("round {} retained no groups", table.round_index));
  }
  std::uint64_t voters = 0;
  for (const GroupCount& gc : table.groups) voters += gc.voter_count;
  return {table.groups.size(), static_cast<double>(voters) /
                                   static_cast<double>(table.groups.size())};
}

void WriteGroupTable(std::ostream& out, const GroupCountTable& table) {
  out << fmt::format("# round={} g={} n_registry={} divisor={} salt_id={}\n",
                     table.round_index, table.params.g,
                     table.params.n_registry, table.params.divisor,
                     table.salt_id);
  for (const GroupCount& gc : table.groups) {
    out << gc.group_id << ',' << gc.voter_count << '\n';
  }
}

GroupCountTable ReadGroupTable(std::istream& in) {
  std::string line;
  if (!csv::NextLine(in, line) || !line.starts_with("# ")) {
    throw Error(ErrorCode::kFileFormat, "group table header missing");
  }
  // Fields must appear in exactly this order.
  static const std::vector<std::string> kKeys = {"round", "g", "n_registry",
                                                 "divisor", "salt_id"};
  std::istringstream header(line.substr(2));
  std::vector<std::string> values;
  std::string item;
  for (const std::string& key : kKeys) {
    if (!(header >> item) || !item.starts_with(key + "=")) {
      throw Error(ErrorCode::kFileFormat,
                  fmt::format("group table header '{}' lacks {}", line, key));
    }
    values.push_back(item.substr(key.size() + 1));
  }
  if (header >> item) {
    throw Error(ErrorCode::kFileFormat,
                fmt::format("trailing header field '{}'", item));
  }

  GroupCountTable table;
  table.round_index = ParseU64(values[0], "round");
  const std::uint64_t g = ParseU64(values[1], "g");
  const std::uint64_t n = ParseU64(values[2], "n_registry");
  const std::uint64_t divisor = ParseU64(values[3], "divisor");
  table.salt_id = values[4];
  if (g > 255) throw Error(ErrorCode::kFileFormat, "g out of range");
  try {
    table.params = GroupParams::Create(n, static_cast<std::uint32_t>(g));
  } catch (const Error& e) {
    throw Error(ErrorCode::kFileFormat, e.what());
  }
  if (table.params.divisor != divisor) {
    throw Error(ErrorCode::kFileFormat,
                fmt::format("divisor {} != floor({}/{})", divisor, n, g));
  }

  while (csv::NextLine(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::kFileFormat, fmt::format("bad row '{}'", line));
    }
    const std::uint64_t id = ParseU64(std::string_view(line).substr(0, comma), "group_id");
    const std::uint64_t count = ParseU64(std::string_view(line).substr(comma + 1), "voter_count");
    if (id >= divisor || count > g) {
      throw Error(ErrorCode::kFileFormat,
                  fmt::format("row '{}' out of range", line));
    }
    if (!table.groups.empty() && table.groups.back().group_id >= id) {
      throw Error(ErrorCode::kFileFormat,
                  fmt::format("group ids not strictly ascending at '{}'", line));
    }
    table.groups.push_back({static_cast<std::uint32_t>(id),
                            static_cast<std::uint32_t>(count)});
  }
  return table;
}

}  // namespace yahtzee
