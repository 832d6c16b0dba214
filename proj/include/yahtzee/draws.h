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

#ifndef YAHTZEE_DRAWS_H_
#define YAHTZEE_DRAWS_H_

#include <cstdint>
#include <iosfwd>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "yahtzee/grouping.h"
#include "yahtzee/identity.h"
#include "yahtzee/records.h"

namespace yahtzee {

struct Draw {
  std::uint64_t round_index = 0;
  std::uint8_t y = 0;

  friend bool operator==(const Draw&, const Draw&) = default;
};

struct DrawVector {
  std::string user_id;
  std::vector<Draw> draws;  // ascending round_index

  // Values of the first n draws by round order (fewer if not available).
  std::vector<std::uint8_t> FirstValues(std::size_t n) const;
};

struct RoundPlan {
  int m1 = 1;  // stage-1 quota for every record
  int m2 = 0;  // additional quota for the redo set
  std::uint64_t rounds_executed = 0;

  // Throws Error(kConfig) unless m1 >= 1 and m2 >= 0.
  void Validate() const;
};

struct UserDraw {
  std::string user_id;
  std::uint8_t y = 0;

  friend bool operator==(const UserDraw&, const UserDraw&) = default;
};

// Platform side of one round, prepared once and reused across rounds.
struct PlatformIndex {
  std::vector<std::string> user_ids;
  std::vector<std::string> keys;  // serialized identities

  static PlatformIndex Build(std::span<const PlatformRecord> records);
  std::size_t size() const { return keys.size(); }
};

// One draw per platform record whose group survived this round, in platform
// order. Throws Error(kParamsMismatch) if the table's params, round or salt
// label disagree with `expected` and `seed`.
std::vector<UserDraw> AssignDraws(const PlatformIndex& platform,
                                  const GroupCountTable& table,
                                  const RoundSeed& seed,
                                  const GroupParams& expected);
std::vector<UserDraw> AssignDraws(std::span<const PlatformRecord> platform,
                                  const GroupCountTable& table,
                                  const RoundSeed& seed,
                                  const GroupParams& expected);

class DrawStore {
 public:
  // Appends one round. Throws Error(kDuplicateRound) if the round was
  // already accumulated or a user appears twice in `round_draws`; the store
  // is unchanged on error.
  void Accumulate(std::span<const UserDraw> round_draws,
                  std::uint64_t round_index);

  const DrawVector* Find(const std::string& user_id) const;
  std::size_t DrawCount(const std::string& user_id) const;

  const std::set<std::uint64_t>& rounds() const { return rounds_; }
  std::size_t user_count() const { return vectors_.size(); }
  std::size_t total_draws() const { return total_draws_; }

  // CSV "user_id,round_index,y". WriteCsv emits the header; AppendRoundCsv
  // emits only rows so the file can grow one round at a time.
  void WriteCsv(std::ostream& out) const;
  static void AppendRoundCsv(std::ostream& out,
                             std::span<const UserDraw> round_draws,
                             std::uint64_t round_index);
  static DrawStore ReadCsv(std::istream& in);

 private:
  std::unordered_map<std::string, DrawVector> vectors_;
  std::vector<std::string> order_;  // first-seen order, for stable output
  std::set<std::uint64_t> rounds_;
  std::size_t total_draws_ = 0;
};

// Mean draws per (record, executed round) over `record_set`; 0 before any
// round has run.
double EmpiricalDrawProbability(const DrawStore& store,
                                std::span<const std::string> record_set);

// Estimated further rounds until every user in `record_set` holds at least
// `quota` draws: ceil((quota - current minimum) / draw_probability). The
// caller keeps looping until the quota literally holds.
std::uint64_t PlanRounds(const DrawStore& store, int quota,
                         std::span<const std::string> record_set,
                         double draw_probability);
// Uses EmpiricalDrawProbability, falling back to the Poisson(g) occupancy
// mass at g when no round has run yet.
std::uint64_t PlanRoundsEmpirical(const DrawStore& store, int quota,
                         std::span<const std::string> record_set,
                         std::uint32_t g);

// Poisson(g) probability mass at g: the expected retained-group fraction.
double PoissonRetention(std::uint32_t g);

// Number of users in `record_set` holding fewer than `quota` draws.
std::size_t CountBelowQuota(const DrawStore& store, int quota,
                            std::span<const std::string> record_set);

}  // namespace yahtzee

#endif  // YAHTZEE_DRAWS_H_
