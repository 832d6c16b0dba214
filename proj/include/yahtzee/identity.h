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

#ifndef YAHTZEE_IDENTITY_H_
#define YAHTZEE_IDENTITY_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace yahtzee {

// Normalized join key shared by both parties. A match requires equality on
// all five fields.
class CanonicalIdentity {
 public:
  CanonicalIdentity() = default;

  // Validates names (non-empty, no whitespace or '|') and the calendar date.
  // Throws Error(kInvalidIdentity) otherwise. Names are expected to be
  // canonical already; see CanonicalizeToken().
  static CanonicalIdentity Create(std::string first_name, std::string last_name,
                                  int birth_day, int birth_month,
                                  int birth_year);

  // Inverse of Serialize(); throws Error(kInvalidIdentity) on malformed input.
  static CanonicalIdentity Parse(std::string_view serialized);

  // "FIRST|LAST|DD-MM-YYYY". This byte layout is what gets hashed, so both
  // parties must produce it identically.
  std::string Serialize() const;

  const std::string& first_name() const { return first_name_; }
  const std::string& last_name() const { return last_name_; }
  int birth_day() const { return birth_day_; }
  int birth_month() const { return birth_month_; }
  int birth_year() const { return birth_year_; }

  friend auto operator<=>(const CanonicalIdentity&,
                          const CanonicalIdentity&) = default;

 private:
  std::string first_name_;
  std::string last_name_;
  int birth_day_ = 0;
  int birth_month_ = 0;
  int birth_year_ = 0;
};

struct NameTokens {
  std::string first_name;
  std::string last_name;

  friend bool operator==(const NameTokens&, const NameTokens&) = default;
};

// ASCII-uppercases a single token and strips trailing commas and periods.
// Non-ASCII bytes pass through untouched.
std::string CanonicalizeToken(std::string_view token);

// First whitespace-delimited token and last token, canonicalized. Fails with
// Error(kEmptyName) unless at least two non-empty tokens exist.
NameTokens CanonicalizeName(std::string_view raw_name);

// Per-round salt agreed by both parties.
struct RoundSeed {
  std::uint64_t round_index = 0;
  std::string salt;

  // Salt = hex SHA-256 of a domain-separated encoding of
  // (master_seed, round_index); distinct rounds get distinct salts.
  static RoundSeed Derive(std::uint64_t master_seed, std::uint64_t round_index);

  // Salt reserved for match-rate estimation, disjoint from every round salt.
  static RoundSeed ForEstimation(std::uint64_t master_seed);

  // Short public label written into group tables so the platform can detect
  // a seed disagreement before using a table.
  std::string Label() const;
};

inline constexpr std::uint32_t kHashModulus = 1u << 28;  // 16^7

struct HashValue {
  std::uint32_t value = 0;  // < kHashModulus

  friend auto operator<=>(const HashValue&, const HashValue&) = default;
};

// Lowercase hex SHA-256 digest.
std::string Sha256Hex(std::string_view data);

// Last 7 hex characters of SHA-256(salt || serialized_identity).
HashValue IdentityHash(std::string_view serialized_identity,
                       std::string_view salt);
HashValue IdentityHash(const CanonicalIdentity& id, const RoundSeed& seed);

template <typename Record>
struct DedupResult {
  std::vector<Record> retained;
  std::size_t dropped = 0;
};

// Drops every occurrence of any identity seen more than once (not
// keep-first). Input order is preserved for the survivors.
template <typename Record, typename KeyFn>
DedupResult<Record> Deduplicate(std::vector<Record> records, KeyFn key_of) {
  std::unordered_map<std::string, std::size_t> counts;
  counts.reserve(records.size());
  for (const Record& r : records) ++counts[key_of(r).Serialize()];

  DedupResult<Record> out;
  out.retained.reserve(records.size());
  for (Record& r : records) {
    if (counts[key_of(r).Serialize()] == 1) out.retained.push_back(std::move(r));
  }
  out.dropped = records.size() - out.retained.size();
  return out;
}

}  // namespace yahtzee

#endif  // YAHTZEE_IDENTITY_H_
