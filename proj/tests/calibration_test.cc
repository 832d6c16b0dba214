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

#include "yahtzee/calibration.h"

#include <set>
#include <sstream>

#include "gtest/gtest.h"
#include "test_util.h"
#include "yahtzee/errors.h"

namespace yahtzee {
namespace {

constexpr ClassLabel kA = ClassLabel::kMatchedAbstainer;
constexpr ClassLabel kV = ClassLabel::kMatchedVoter;
constexpr ClassLabel kU = ClassLabel::kUnmatched;

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

SimulationConfig SmallConfig(double t) {
  SimulationConfig cfg;
  cfg.t = t;
  cfg.n = 30000;
  cfg.replicates = 2;
  return cfg;
}

TEST(AccuracyTest, ConditionalOnPrediction) {
  const std::vector<ClassLabel> pred = {kV, kV, kA, kU, kU, kV};
  const std::vector<ClassLabel> truth = {kV, kA, kA, kU, kV, kV};
  const auto acc = EvaluateAccuracy(pred, truth);
  EXPECT_DOUBLE_EQ(*acc.voter, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(*acc.abstainer, 1.0);
  EXPECT_DOUBLE_EQ(*acc.unmatched, 0.5);

  const std::vector<ClassLabel> none = {kU};
  EXPECT_FALSE(EvaluateAccuracy(none, none).voter.has_value());
  EXPECT_EQ(CodeOf([&] { CountAccuracy(pred, none); }),
            ErrorCode::kLengthMismatch);

  AccuracyCounts sum = CountAccuracy(pred, truth);
  sum += CountAccuracy(none, none);
  EXPECT_EQ(sum.predicted[LabelIndex(kU)], 3u);
  EXPECT_EQ(sum.correct[LabelIndex(kU)], 2u);
}

TEST(SimulateTwoStageTest, MatchesTranscribedReference) {
  for (double t : {0.3, 0.45, 0.7}) {
    SimulationConfig cfg = SmallConfig(t);
    cfg.n = 1000;
    for (std::uint64_t rep : {0u, 5u}) {
      const auto pop = SimulatePopulation(cfg, 50 + 30, rep);
      const auto ref = testing::TranscribedTwoStage(pop.draws, 50, 30, t, cfg.g);
      const AccuracyCounts expect = CountAccuracy(ref, pop.truth);
      const AccuracyCounts got = SimulateTwoStage(cfg, 50, 30, rep);
      EXPECT_EQ(got.correct, expect.correct) << "t=" << t;
      EXPECT_EQ(got.predicted, expect.predicted) << "t=" << t;
    }
  }
}

TEST(AccuracyCurveTest, ImprovesWithDraws) {
  const SimulationConfig cfg = SmallConfig(0.45);
  const std::vector<int> ms = {5, 50, 150};
  const auto curve = AccuracyCurve(cfg, ms);
  ASSERT_EQ(curve.size(), 3u);
  EXPECT_LT(*curve[0].acc_voter, *curve[2].acc_voter);
  EXPECT_LT(*curve[0].acc_abstainer, *curve[2].acc_abstainer);
  EXPECT_GT(*curve[2].acc_voter, 0.95);
  const std::vector<int> bad = {10, 10};
  EXPECT_EQ(CodeOf([&] { AccuracyCurve(cfg, bad); }), ErrorCode::kConfig);
}

TEST(AccuracyCurveTest, MirrorsUnderTurnoutReflection) {
  const std::vector<int> ms = {20, 60};
  const auto low = AccuracyCurve(SmallConfig(0.3), ms);
  const auto high = AccuracyCurve(SmallConfig(0.7), ms);
  for (std::size_t k = 0; k < ms.size(); ++k) {
    EXPECT_NEAR(*low[k].acc_voter, *high[k].acc_abstainer, 0.03);
    EXPECT_NEAR(*low[k].acc_abstainer, *high[k].acc_voter, 0.03);
  }
}

TEST(CalibrateTest, GridMinimality) {
  const SimulationConfig cfg = SmallConfig(0.45);
  const CalibrationPlan plan = Calibrate(cfg);
  ASSERT_GE(plan.m1, cfg.grid_step);
  EXPECT_EQ(plan.m1 % cfg.grid_step, 0);
  EXPECT_EQ(plan.redo_class, std::optional<ClassLabel>(kA));

  // The less common behavior (voters here) first reaches target at m1.
  std::vector<int> ms;
  for (int m = cfg.grid_step; m <= plan.m1; m += cfg.grid_step) ms.push_back(m);
  const auto curve = AccuracyCurve(cfg, ms);
  for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
    EXPECT_LT(curve[k].acc_voter.value_or(0.0), cfg.target_accuracy);
  }
  EXPECT_GE(*curve.back().acc_voter, cfg.target_accuracy);

  // m2 is the smallest grid value after which both classes meet target.
  AccuracyCounts at, below;
  for (int r = 0; r < cfg.replicates; ++r) {
    at += SimulateTwoStage(cfg, plan.m1, plan.m2, r);
    if (plan.m2 > 0) below += SimulateTwoStage(cfg, plan.m1, plan.m2 - cfg.grid_step, r);
  }
  EXPECT_GE(*at.Accuracy(kV), cfg.target_accuracy);
  EXPECT_GE(*at.Accuracy(kA), cfg.target_accuracy);
  if (plan.m2 > 0) {
    EXPECT_TRUE(below.Accuracy(kV).value_or(0) < cfg.target_accuracy ||
                below.Accuracy(kA).value_or(0) < cfg.target_accuracy);
  }
  EXPECT_GT(plan.achieved_accuracy_voter, 0.9);
  EXPECT_GT(plan.achieved_accuracy_abstainer, 0.9);
}

TEST(CalibrateTest, EvenTurnoutNeedsNoRedo) {
  const CalibrationPlan plan = Calibrate(SmallConfig(0.5));
  EXPECT_EQ(plan.m2, 0);
  EXPECT_FALSE(plan.redo_class.has_value());
}

TEST(CalibrateTest, HigherMatchRateNeedsNoMoreDraws) {
  SimulationConfig lo = SmallConfig(0.45);
  SimulationConfig hi = lo;
  hi.mm = 0.7;
  const auto a = Calibrate(lo);
  const auto b = Calibrate(hi);
  EXPECT_LE(b.m1, a.m1);
  EXPECT_LE(b.m1 + b.m2, a.m1 + a.m2);
}

TEST(CalibrateTest, UnreachableTarget) {
  SimulationConfig cfg = SmallConfig(0.45);
  cfg.grid_cap = 10;
  EXPECT_EQ(CodeOf([&] { Calibrate(cfg); }), ErrorCode::kTargetUnreachable);
}

TEST(CalibrationReportTest, RoundTrip) {
  const SimulationConfig cfg = SmallConfig(0.5);
  CalibrationPlan plan{45, 0, std::nullopt, 0.951, 0.96};
  std::stringstream buf;
  WriteCalibrationReport(buf, cfg, plan);
  EXPECT_NE(buf.str().find("redo_class=none"), std::string::npos);
  const auto back = ReadCalibrationReport(buf);
  EXPECT_EQ(back.m1, 45);
  EXPECT_EQ(back.m2, 0);
  EXPECT_FALSE(back.redo_class.has_value());
  EXPECT_DOUBLE_EQ(back.achieved_accuracy_voter, 0.951);

  std::stringstream with_redo;
  WriteCalibrationReport(with_redo, cfg, {55, 25, kA, 0.95, 0.95});
  EXPECT_EQ(ReadCalibrationReport(with_redo).redo_class,
            std::optional<ClassLabel>(kA));

  std::istringstream missing("m1=3\n");
  EXPECT_EQ(CodeOf([&] { ReadCalibrationReport(missing); }),
            ErrorCode::kFileFormat);
}

TEST(CurveCsvTest, Layout) {
  const std::vector<CurvePoint> curve = {{5, 0.5, std::nullopt}, {10, 0.75, 1.0}};
  std::ostringstream out;
  WriteCurveCsv(out, curve);
  EXPECT_EQ(out.str(), "m,acc_voter,acc_abstainer\n5,0.5,NA\n10,0.75,1\n");
}

TEST(MatchRateTest, EstimateFromHashedSample) {
  const auto world = testing::MakeWorld(20000, 0.45, 10000, 0.3, 3);
  std::vector<CanonicalIdentity> reg_ids;
  for (const auto& r : world.registry) reg_ids.push_back(r.identity);
  const RoundSeed salt = RoundSeed::ForEstimation(9);
  const auto hashes = EstimationHashes(reg_ids, salt);
  // A 28-bit hash admits a few collisions at this size.
  EXPECT_GE(hashes.size() + 5, reg_ids.size());

  std::vector<CanonicalIdentity> all;
  for (const auto& p : world.platform) all.push_back(p.identity);
  EXPECT_NEAR(EstimateMatchRate(all, hashes, salt), 0.3, 0.001);

  std::vector<CanonicalIdentity> sample;
  for (std::size_t i : SampleIndices(all.size(), 1000, 4)) sample.push_back(all[i]);
  EXPECT_NEAR(EstimateMatchRate(sample, hashes, salt), 0.3, 0.06);
  EXPECT_EQ(CodeOf([&] {
              EstimateMatchRate(std::vector<CanonicalIdentity>{}, hashes, salt);
            }),
            ErrorCode::kConfig);
}

TEST(SampleIndicesTest, DistinctAndDeterministic) {
  const auto a = SampleIndices(5000, 1000, 11);
  EXPECT_EQ(a, SampleIndices(5000, 1000, 11));
  EXPECT_NE(a, SampleIndices(5000, 1000, 12));
  EXPECT_EQ(std::set<std::size_t>(a.begin(), a.end()).size(), 1000u);
  EXPECT_EQ(SampleIndices(10, 50, 1).size(), 10u);
}

}  // namespace
}  // namespace yahtzee
