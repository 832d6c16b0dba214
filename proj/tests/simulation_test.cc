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

#include "yahtzee/simulation.h"

#include <omp.h>

#include <array>
#include <cmath>

#include "gtest/gtest.h"
#include "test_util.h"
#include "yahtzee/errors.h"

namespace yahtzee {
namespace {

TEST(ClassSizesTest, RoundedCounts) {
  SimulationConfig cfg;  // t=.45 mm=.3 n=100000
  const ClassSizes s = ComputeClassSizes(cfg);
  EXPECT_EQ(s.abstainers, 16500u);
  EXPECT_EQ(s.voters, 13500u);
  EXPECT_EQ(s.unmatched, 70000u);
  const auto truth = SimulatedTruth(cfg);
  EXPECT_EQ(truth.size(), 100000u);
  EXPECT_EQ(truth[16499], ClassLabel::kMatchedAbstainer);
  EXPECT_EQ(truth[16500], ClassLabel::kMatchedVoter);
  EXPECT_EQ(truth[30000], ClassLabel::kUnmatched);
}

TEST(SimulationConfigTest, Validation) {
  const auto bad = [](auto mutate) {
    SimulationConfig cfg;
    mutate(cfg);
    try {
      cfg.Validate();
    } catch (const Error& e) {
      return e.code() == ErrorCode::kConfig;
    }
    return false;
  };
  EXPECT_TRUE(bad([](auto& c) { c.t = 0.0; }));
  EXPECT_TRUE(bad([](auto& c) { c.t = 1.0; }));
  EXPECT_TRUE(bad([](auto& c) { c.mm = 0.0; }));
  EXPECT_TRUE(bad([](auto& c) { c.n = 999; }));
  EXPECT_TRUE(bad([](auto& c) { c.g = 1; }));
  EXPECT_TRUE(bad([](auto& c) { c.target_accuracy = 1.0; }));
  EXPECT_TRUE(bad([](auto& c) { c.replicates = 0; }));
  EXPECT_TRUE(bad([](auto& c) { c.grid_cap = 2; }));
  SimulationConfig ok;
  ok.Validate();
}

TEST(SimulatePopulationTest, DeterministicAcrossThreadCounts) {
  SimulationConfig cfg;
  cfg.n = 20000;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto a = SimulatePopulation(cfg, 6, 1);
  omp_set_num_threads(4);
  const auto b = SimulatePopulation(cfg, 6, 1);
  omp_set_num_threads(saved);
  EXPECT_EQ(a.draws.data, b.draws.data);
  EXPECT_NE(SimulatePopulation(cfg, 6, 2).draws.data, a.draws.data);
  // Extending m keeps earlier columns unchanged.
  const auto c = SimulatePopulation(cfg, 9, 1);
  for (std::size_t i = 0; i < cfg.n; i += 101) {
    for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(c.draws.row(i)[j], a.draws.row(i)[j]);
  }
}

TEST(SimulatePopulationTest, SupportRespectsClass) {
  SimulationConfig cfg;
  cfg.n = 20000;
  const auto pop = SimulatePopulation(cfg, 10);
  for (std::size_t i = 0; i < cfg.n; ++i) {
    for (std::uint8_t y : pop.draws.row(i)) {
      ASSERT_LE(y, cfg.g);
      if (pop.truth[i] == ClassLabel::kMatchedVoter) ASSERT_GE(y, 1);
      if (pop.truth[i] == ClassLabel::kMatchedAbstainer) ASSERT_LE(y, cfg.g - 1);
    }
  }
}

// Pearson goodness of fit of each class's draws against its model pmf.
TEST(SimulatePopulationTest, DrawsFollowModelDistribution) {
  SimulationConfig cfg;
  cfg.n = 30000;
  cfg.t = 0.45;
  const auto pop = SimulatePopulation(cfg, 10, 3);
  for (ClassLabel h : kAllLabels) {
    std::array<double, 6> observed{};
    double total = 0;
    for (std::size_t i = 0; i < cfg.n; ++i) {
      if (pop.truth[i] != h) continue;
      for (std::uint8_t y : pop.draws.row(i)) {
        observed[y] += 1;
        total += 1;
      }
    }
    double chi2 = 0.0;
    int cells = 0;
    for (int y = 0; y <= cfg.g; ++y) {
      const double expected = total * DrawPmf(y, h, cfg.population());
      if (expected == 0.0) {
        EXPECT_EQ(observed[y], 0.0);
        continue;
      }
      chi2 += std::pow(observed[y] - expected, 2) / expected;
      ++cells;
    }
    // 99.9% quantile of chi-square with 4 (matched) or 5 (unmatched) df.
    EXPECT_LT(chi2, cells == 5 ? 18.467 : 20.515) << LabelName(h);
  }
}

}  // namespace
}  // namespace yahtzee
