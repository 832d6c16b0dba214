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

#include <cmath>
#include <map>
#include <sstream>

#include "gtest/gtest.h"
#include "test_util.h"
#include "yahtzee/errors.h"

namespace yahtzee {
namespace {

template <typename Fn>
ErrorCode CodeOf(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kConfig;
}

class AssignDrawsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    world_ = testing::MakeWorld(20000, 0.45, 4000, 0.3, 12);
    params_ = GroupParams::Create(world_.registry.size(), 5);
  }

  testing::SyntheticWorld world_;
  GroupParams params_;
};

TEST_F(AssignDrawsTest, DrawsAgreeWithOwnGroupComposition) {
  std::map<std::string, CanonicalIdentity> ids;
  for (const auto& p : world_.platform) ids[p.user_id] = p.identity;
  for (std::uint64_t round = 0; round < 5; ++round) {
    const RoundSeed seed = RoundSeed::Derive(99, round);
    const auto table = BuildGroupTable(world_.registry, seed, params_);
    const auto draws = AssignDraws(world_.platform, table, seed, params_);
    for (const UserDraw& d : draws) {
      const auto gid = GroupId(IdentityHash(ids.at(d.user_id), seed), params_);
      ASSERT_EQ(table.Lookup(gid), std::optional<std::uint32_t>(d.y));
      const ClassLabel truth = world_.truth.at(d.user_id);
      if (truth == ClassLabel::kMatchedVoter) EXPECT_GE(d.y, 1);
      if (truth == ClassLabel::kMatchedAbstainer) EXPECT_LE(d.y, 4);
    }
  }
}

TEST_F(AssignDrawsTest, DrawProbabilityNearPoissonMass) {
  const PlatformIndex index = PlatformIndex::Build(world_.platform);
  const RegistryIndex reg = RegistryIndex::Build(world_.registry);
  std::size_t drawn = 0;
  const int rounds = 20;
  for (int r = 0; r < rounds; ++r) {
    const RoundSeed seed = RoundSeed::Derive(5, r);
    drawn += AssignDraws(index, BuildGroupTable(reg, seed, params_), seed,
                         params_).size();
  }
  EXPECT_NEAR(static_cast<double>(drawn) / (rounds * index.size()),
              PoissonRetention(5), 0.01);
}

TEST_F(AssignDrawsTest, RejectsMismatchedTables) {
  const RoundSeed seed = RoundSeed::Derive(1, 3);
  const auto table = BuildGroupTable(world_.registry, seed, params_);
  EXPECT_EQ(CodeOf([&] {
              AssignDraws(world_.platform, table, seed,
                          GroupParams::Create(world_.registry.size(), 4));
            }),
            ErrorCode::kParamsMismatch);
  EXPECT_EQ(CodeOf([&] {
              AssignDraws(world_.platform, table, RoundSeed::Derive(1, 4),
                          params_);
            }),
            ErrorCode::kParamsMismatch);
  EXPECT_EQ(CodeOf([&] {
              AssignDraws(world_.platform, table, RoundSeed::Derive(2, 3),
                          params_);
            }),
            ErrorCode::kParamsMismatch);
}

TEST(PoissonRetentionTest, GoldenValue) {
  EXPECT_NEAR(PoissonRetention(5), 0.17546736976785068, 1e-14);
  EXPECT_NEAR(PoissonRetention(2), 2.0 * std::exp(-2.0), 1e-14);
}

TEST(DrawStoreTest, AccumulatesInRoundOrder) {
  DrawStore store;
  store.Accumulate(std::vector<UserDraw>{{"a", 3}, {"b", 0}}, 5);
  store.Accumulate(std::vector<UserDraw>{{"a", 1}}, 2);
  store.Accumulate(std::vector<UserDraw>{}, 7);
  ASSERT_NE(store.Find("a"), nullptr);
  EXPECT_EQ(store.Find("a")->draws,
            (std::vector<Draw>{{2, 1}, {5, 3}}));
  EXPECT_EQ(store.Find("a")->FirstValues(1), (std::vector<std::uint8_t>{1}));
  EXPECT_EQ(store.DrawCount("b"), 1u);
  EXPECT_EQ(store.DrawCount("zz"), 0u);
  EXPECT_EQ(store.Find("zz"), nullptr);
  EXPECT_EQ(store.total_draws(), 3u);
  EXPECT_EQ(store.user_count(), 2u);
  EXPECT_EQ(store.rounds(), (std::set<std::uint64_t>{2, 5, 7}));
}

TEST(DrawStoreTest, DuplicateRoundRejected) {
  DrawStore store;
  store.Accumulate(std::vector<UserDraw>{{"a", 3}}, 0);
  EXPECT_EQ(CodeOf([&] {
              store.Accumulate(std::vector<UserDraw>{{"b", 1}}, 0);
            }),
            ErrorCode::kDuplicateRound);
  EXPECT_EQ(CodeOf([&] {
              store.Accumulate(std::vector<UserDraw>{{"b", 1}, {"b", 2}}, 1);
            }),
            ErrorCode::kDuplicateRound);
  // A rejected round leaves the store untouched.
  EXPECT_EQ(store.total_draws(), 1u);
  EXPECT_EQ(store.rounds().size(), 1u);
}

TEST(DrawStoreTest, CsvRoundTripAndAppend) {
  DrawStore store;
  const std::vector<UserDraw> r0 = {{"u,1", 3}, {"u2", 0}};
  const std::vector<UserDraw> r1 = {{"u2", 5}};
  store.Accumulate(r0, 0);
  store.Accumulate(r1, 1);
  std::stringstream whole;
  store.WriteCsv(whole);

  std::stringstream appended;
  appended << "user_id,round_index,y\n";
  DrawStore::AppendRoundCsv(appended, r0, 0);
  DrawStore::AppendRoundCsv(appended, r1, 1);
  EXPECT_EQ(whole.str(), appended.str());

  const DrawStore back = DrawStore::ReadCsv(whole);
  EXPECT_EQ(back.total_draws(), 3u);
  EXPECT_EQ(back.Find("u,1")->draws, (std::vector<Draw>{{0, 3}}));
  EXPECT_EQ(back.Find("u2")->draws, (std::vector<Draw>{{0, 0}, {1, 5}}));

  std::istringstream bad("user_id,round_index,y\nu,x,1\n");
  EXPECT_EQ(CodeOf([&] { DrawStore::ReadCsv(bad); }), ErrorCode::kFileFormat);
  std::istringstream dup("user_id,round_index,y\nu,0,1\nu,0,2\n");
  EXPECT_EQ(CodeOf([&] { DrawStore::ReadCsv(dup); }), ErrorCode::kDuplicateRound);
}

TEST(PlanRoundsTest, DeficitOverProbability) {
  DrawStore store;
  const std::vector<std::string> users = {"a", "b"};
  EXPECT_EQ(PlanRounds(store, 56, users, 0.175), 320u);
  EXPECT_EQ(PlanRounds(store, 10, users, 0.3), 34u);
  store.Accumulate(std::vector<UserDraw>{{"a", 1}, {"b", 1}}, 0);
  store.Accumulate(std::vector<UserDraw>{{"a", 1}}, 1);
  EXPECT_EQ(PlanRounds(store, 2, users, 0.5), 2u);
  EXPECT_EQ(PlanRounds(store, 1, users, 0.5), 0u);
  EXPECT_EQ(PlanRounds(store, 3, std::vector<std::string>{}, 0.5), 0u);
  EXPECT_DOUBLE_EQ(EmpiricalDrawProbability(store, users), 0.75);
  EXPECT_EQ(PlanRoundsEmpirical(store, 3, users, 5), 3u);
  EXPECT_EQ(PlanRoundsEmpirical(DrawStore{}, 56, users, 5), 320u);
  EXPECT_EQ(CountBelowQuota(store, 2, users), 1u);
  EXPECT_EQ(CodeOf([&] { PlanRounds(store, 0, users, 0.5); }),
            ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([&] { PlanRounds(store, 5, users, 0.0); }),
            ErrorCode::kConfig);
}

TEST(RoundPlanTest, Validate) {
  RoundPlan{56, 27, 0}.Validate();
  EXPECT_EQ(CodeOf([] { RoundPlan{0, 0, 0}.Validate(); }), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { RoundPlan{1, -1, 0}.Validate(); }), ErrorCode::kConfig);
}

}  // namespace
}  // namespace yahtzee
