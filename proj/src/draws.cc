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

#include "yahtzee/draws.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <unordered_set>

#include "fmt/format.h"
#include "yahtzee/csv.h"
#include "yahtzee/errors.h"
#include "yahtzee/kernels.h"

namespace yahtzee {

std::vector<std::uint8_t> DrawVector::FirstValues(std::size_t n) const {
  std::vector<std::uint8_t> out;
  const std::size_t k = std::min(n, draws.size());
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(draws[i].y);
  return out;
}

void RoundPlan::Validate() const {
  if (m1 < 1 || m2 < 0) {
    throw Error(ErrorCode::kConfig,
                fmt::format("invalid quotas m1={} m2={}", m1, m2));
  }
}

PlatformIndex PlatformIndex::Build(std::span<const PlatformRecord> records) {
  PlatformIndex index;
  index.keys = SerializeIdentities(records);
  index.user_ids.reserve(records.size());
  for (const PlatformRecord& r : records) index.user_ids.push_back(r.user_id);
  return index;
}

std::vector<UserDraw> AssignDraws(const PlatformIndex& platform,
                                  const GroupCountTable& table,
                                  const RoundSeed& seed,
                                  const GroupParams& expected) {
  if (!(table.params == expected)) {
    throw Error(ErrorCode::kParamsMismatch,
                fmt::format("table params g={} N={} divisor={} but configured "
                            "g={} N={} divisor={}",
                            table.params.g, table.params.n_registry,
                            table.params.divisor, expected.g,
                            expected.n_registry, expected.divisor));
  }
  if (table.round_index != seed.round_index) {
    throw Error(ErrorCode::kParamsMismatch,
                fmt::format("table is round {} but seed is round {}",
                            table.round_index, seed.round_index));
  }
  if (table.salt_id != seed.Label()) {
    throw Error(ErrorCode::kParamsMismatch,
                fmt::format("table salt_id {} does not match local seed {}",
                            table.salt_id, seed.Label()));
  }

  std::vector<std::uint32_t> ids(platform.size());
  kernels::HashGroupIds(platform.keys, seed.salt, expected.divisor, ids);
  std::vector<std::int16_t> ys(platform.size());
  kernels::LookupDraws(ids, table, ys);

  std::vector<UserDraw> out;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (ys[i] == kernels::kNoDraw) continue;
    out.push_back({platform.user_ids[i], static_cast<std::uint8_t>(ys[i])});
  }
  return out;
}

std::vector<UserDraw> AssignDraws(std::span<const PlatformRecord> platform,
                                  const GroupCountTable& table,
                                  const RoundSeed& seed,
                                  const GroupParams& expected) {
  return AssignDraws(PlatformIndex::Build(platform), table, seed, expected);
}

void DrawStore::Accumulate(std::span<const UserDraw> round_draws,
                           std::uint64_t round_index) {
  if (rounds_.contains(round_index)) {
    throw Error(ErrorCode::kDuplicateRound,
                fmt::format("round {} already accumulated", round_index));
  }
  std::unordered_set<std::string_view> seen;
  seen.reserve(round_draws.size());
  for (const UserDraw& d : round_draws) {
    if (!seen.insert(d.user_id).second) {
      throw Error(ErrorCode::kDuplicateRound,
                  fmt::format("user {} drawn twice in round {}", d.user_id,
                              round_index));
    }
  }

  for (const UserDraw& d : round_draws) {
    auto [it, inserted] = vectors_.try_emplace(d.user_id);
    if (inserted) {
      it->second.user_id = d.user_id;
      order_.push_back(d.user_id);
    }
    auto& draws = it->second.draws;
    const Draw draw{round_index, d.y};
    draws.insert(std::upper_bound(draws.begin(), draws.end(), draw,
                                  [](const Draw& a, const Draw& b) {
                                    return a.round_index < b.round_index;
                                  }),
                 draw);
  }
  rounds_.insert(round_index);
  total_draws_ += round_draws.size();
}

const DrawVector* DrawStore::Find(const std::string& user_id) const {
  const auto it = vectors_.find(user_id);
  return it == vectors_.end() ? nullptr : &it->second;
}

std::size_t DrawStore::DrawCount(const std::string& user_id) const {
  const DrawVector* v = Find(user_id);
  return v == nullptr ? 0 : v->draws.size();
}

void DrawStore::WriteCsv(std::ostream& out) const {
  out << "user_id,round_index,y\n";
  for (std::uint64_t round : rounds_) {
    for (const std::string& id : order_) {
      const auto& draws = vectors_.at(id).draws;
      const auto it = std::lower_bound(
          draws.begin(), draws.end(), round,
          [](const Draw& d, std::uint64_t r) { return d.round_index < r; });
      if (it != draws.end() && it->round_index == round) {
        out << csv::Field(id) << ',' << round << ',' << int{it->y} << '\n';
      }
    }
  }
}

void DrawStore::AppendRoundCsv(std::ostream& out,
                               std::span<const UserDraw> round_draws,
                               std::uint64_t round_index) {
  for (const UserDraw& d : round_draws) {
    out << csv::Field(d.user_id) << ',' << round_index << ',' << int{d.y}
        << '\n';
  }
}

DrawStore DrawStore::ReadCsv(std::istream& in) {
  csv::ExpectHeader(in, {"user_id", "round_index", "y"});
  // Rows are grouped by round; collect them and replay in round order.
  std::map<std::uint64_t, std::vector<UserDraw>> by_round;
  std::string line;
  while (csv::NextLine(in, line)) {
    if (line.empty()) continue;
    const auto f = csv::SplitLine(line);
    std::uint64_t round = 0;
    unsigned y = 0;
    if (f.size() != 3 || f[0].empty() ||
        std::from_chars(f[1].data(), f[1].data() + f[1].size(), round).ec !=
            std::errc() ||
        std::from_chars(f[2].data(), f[2].data() + f[2].size(), y).ec !=
            std::errc() ||
        y > 255) {
      throw Error(ErrorCode::kFileFormat,
                  fmt::format("bad draw store row '{}'", line));
    }
    by_round[round].push_back({f[0], static_cast<std::uint8_t>(y)});
  }
  DrawStore store;
  for (const auto& [round, draws] : by_round) store.Accumulate(draws, round);
  return store;
}

double EmpiricalDrawProbability(const DrawStore& store,
                                std::span<const std::string> record_set) {
  if (store.rounds().empty() || record_set.empty()) return 0.0;
  std::size_t draws = 0;
  for (const std::string& id : record_set) draws += store.DrawCount(id);
  return static_cast<double>(draws) /
         (static_cast<double>(record_set.size()) *
          static_cast<double>(store.rounds().size()));
}

std::uint64_t PlanRounds(const DrawStore& store, int quota,
                         std::span<const std::string> record_set,
                         double draw_probability) {
  if (quota < 1) throw Error(ErrorCode::kConfig, "quota must be >= 1");
  if (record_set.empty()) return 0;
  std::size_t min_draws = std::numeric_limits<std::size_t>::max();
  for (const std::string& id : record_set) {
    min_draws = std::min(min_draws, store.DrawCount(id));
  }
  if (min_draws >= static_cast<std::size_t>(quota)) return 0;
  if (!(draw_probability > 0.0)) {
    throw Error(ErrorCode::kConfig, "draw probability must be positive");
  }
  const double deficit = static_cast<double>(quota) - static_cast<double>(min_draws);
  // Guard against 56 / 0.175 landing a hair above 320.
  return static_cast<std::uint64_t>(std::ceil(deficit / draw_probability - 1e-9));
}

std::uint64_t PlanRoundsEmpirical(const DrawStore& store, int quota,
                                  std::span<const std::string> record_set,
                                  std::uint32_t g) {
  double prob = EmpiricalDrawProbability(store, record_set);
  if (!(prob > 0.0)) prob = PoissonRetention(g);
  return PlanRounds(store, quota, record_set, prob);
}

double PoissonRetention(std::uint32_t g) {
  const double lambda = g;
  return std::exp(-lambda + lambda * std::log(lambda) - std::lgamma(lambda + 1));
}

std::size_t CountBelowQuota(const DrawStore& store, int quota,
                            std::span<const std::string> record_set) {
  return static_cast<std::size_t>(std::count_if(
      record_set.begin(), record_set.end(), [&](const std::string& id) {
        return store.DrawCount(id) < static_cast<std::size_t>(quota);
      }));
}

}  // namespace yahtzee
