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

#ifndef YAHTZEE_CALIBRATION_H_
#define YAHTZEE_CALIBRATION_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "yahtzee/classifier.h"
#include "yahtzee/identity.h"
#include "yahtzee/simulation.h"

namespace yahtzee {

// Agreement and prediction counts per class; pools across replicates by
// addition.
struct AccuracyCounts {
  std::array<std::uint64_t, 3> correct{};
  std::array<std::uint64_t, 3> predicted{};

  AccuracyCounts& operator+=(const AccuracyCounts& other);

  // Pr(truth = label | prediction = label); nullopt when nothing was
  // predicted as `label`.
  std::optional<double> Accuracy(ClassLabel label) const;
};

struct ConditionalAccuracy {
  std::optional<double> voter;
  std::optional<double> abstainer;
  std::optional<double> unmatched;
};

// Throws Error(kLengthMismatch) if the spans differ in length.
AccuracyCounts CountAccuracy(std::span<const ClassLabel> predictions,
                             std::span<const ClassLabel> truth);
ConditionalAccuracy EvaluateAccuracy(std::span<const ClassLabel> predictions,
                                     std::span<const ClassLabel> truth);
ConditionalAccuracy ToConditionalAccuracy(const AccuracyCounts& counts);

// Two-stage classification of one simulated replicate with (m1, m2), as in
// the reference simulation: stage-2 draws are fresh columns m1..m1+m2-1.
AccuracyCounts SimulateTwoStage(const SimulationConfig& cfg, int m1, int m2,
                                std::uint64_t replicate);

struct CurvePoint {
  int m = 0;
  std::optional<double> acc_voter;
  std::optional<double> acc_abstainer;
};

// Single-stage conditional accuracies at each m, pooled over cfg.replicates.
// `m_values` must be non-empty, positive and strictly ascending.
std::vector<CurvePoint> AccuracyCurve(const SimulationConfig& cfg,
                                      std::span<const int> m_values);

struct CalibrationPlan {
  int m1 = 0;
  int m2 = 0;
  std::optional<ClassLabel> redo_class;  // none at t = 0.5
  // Measured on a fresh replicate, not the ones used for the search.
  double achieved_accuracy_voter = 0.0;
  double achieved_accuracy_abstainer = 0.0;
};

// Grid search (cfg.grid_step up to cfg.grid_cap total draws):
//   m1 = smallest grid value at which the less common behavior reaches the
//        target (both behaviors at t = 0.5);
//   m2 = smallest additional grid value after which both matched classes
//        meet the target once the redo set is reclassified.
// Accuracies are pooled over cfg.replicates. Throws
// Error(kTargetUnreachable) when the grid is exhausted.
CalibrationPlan Calibrate(const SimulationConfig& cfg);

void WriteCalibrationReport(std::ostream& out, const SimulationConfig& cfg,
                            const CalibrationPlan& plan);
// Reads m1/m2 (and the rest) back from a report.
CalibrationPlan ReadCalibrationReport(std::istream& in);

// "m,acc_voter,acc_abstainer" with NA for undefined accuracies.
void WriteCurveCsv(std::ostream& out, std::span<const CurvePoint> curve);

// Hashes every identity with the estimation salt.
std::unordered_set<std::uint32_t> EstimationHashes(
    std::span<const CanonicalIdentity> identities, const RoundSeed& salt);

// Fraction of `sample` whose estimation hash appears in `registry_hashes`.
// Only the aggregate is returned.
double EstimateMatchRate(std::span<const CanonicalIdentity> sample,
                         const std::unordered_set<std::uint32_t>& registry_hashes,
                         const RoundSeed& salt);

// k distinct indices from [0, n), uniformly, reproducible from `seed`.
std::vector<std::size_t> SampleIndices(std::size_t n, std::size_t k,
                                       std::uint64_t seed);

}  // namespace yahtzee

#endif  // YAHTZEE_CALIBRATION_H_
