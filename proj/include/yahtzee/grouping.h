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

#ifndef YAHTZEE_GROUPING_H_
#define YAHTZEE_GROUPING_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "yahtzee/identity.h"
#include "yahtzee/records.h"

namespace yahtzee {

struct GroupParams {
  std::uint64_t n_registry = 0;
  std::uint32_t g = 5;
  std::uint64_t divisor = 0;  // floor(n_registry / g)

  // Throws Error(kConfig) unless g >= 2, 1 <= divisor < 2^28.
  static GroupParams Create(std::uint64_t n_registry, std::uint32_t g);

  friend bool operator==(const GroupParams&, const GroupParams&) = default;
};

inline std::uint32_t GroupId(HashValue h, const GroupParams& params) {
  return static_cast<std::uint32_t>(h.value % params.divisor);
}

struct GroupCount {
  std::uint32_t group_id = 0;
  std::uint32_t voter_count = 0;

  friend bool operator==(const GroupCount&, const GroupCount&) = default;
};

// The per-round artifact the registry hands to the platform. Holds only
// group ids and voter counts of groups that had exactly g members.
struct GroupCountTable {
  std::uint64_t round_index = 0;
  GroupParams params;
  std::string salt_id;
  std::vector<GroupCount> groups;  // ascending group_id

  std::optional<std::uint32_t> Lookup(std::uint32_t group_id) const;

  friend bool operator==(const GroupCountTable&, const GroupCountTable&) = default;
};

// Registry side of one round, prepared once and reused across rounds.
struct RegistryIndex {
  std::vector<std::string> keys;    // serialized identities
  std::vector<std::uint8_t> voted;  // parallel to keys

  static RegistryIndex Build(std::span<const RegistryRecord> records);
  std::size_t size() const { return keys.size(); }
};

// Hashes every registry identity with this round's salt, keeps groups with
// exactly g members, and records their voter counts. Throws Error(kConfig)
// if params.n_registry disagrees with the registry size.
GroupCountTable BuildGroupTable(const RegistryIndex& registry,
                                const RoundSeed& seed,
                                const GroupParams& params);
GroupCountTable BuildGroupTable(std::span<const RegistryRecord> registry,
                                const RoundSeed& seed,
                                const GroupParams& params);

struct GroupTableStats {
  std::size_t retained_groups = 0;
  double mean_voters_per_group = 0.0;
};

// Throws Error(kEmptyTable) for a table without groups.
GroupTableStats TableStats(const GroupCountTable& table);

// Wire format:
//   # round=<i> g=<g> n_registry=<N> divisor=<d> salt_id=<label>
//   <group_id>,<voter_count>     (ascending group_id)
void WriteGroupTable(std::ostream& out, const GroupCountTable& table);
// Throws Error(kFileFormat) on any deviation from the format, including
// unsorted ids, counts above g, or a divisor inconsistent with N and g.
GroupCountTable ReadGroupTable(std::istream& in);

}  // namespace yahtzee

#endif  // YAHTZEE_GROUPING_H_
