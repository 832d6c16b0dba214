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

#ifndef YAHTZEE_VALIDATION_H_
#define YAHTZEE_VALIDATION_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "yahtzee/classifier.h"

namespace yahtzee {

// counts[true class][predicted class], indexed by LabelIndex().
struct TruthTable {
  std::array<std::array<std::uint64_t, 3>, 3> counts{};

  std::uint64_t Total() const;
  std::uint64_t TrueCount(ClassLabel label) const;       // row sum
  std::uint64_t PredictedCount(ClassLabel label) const;  // column sum
};

// Tallies every classified user. Throws Error(kMissingTruth) when a
// classified user has no truth label.
TruthTable BuildTruthTable(
    const std::map<std::string, ClassificationResult>& results,
    const std::map<std::string, ClassLabel>& truth);
TruthTable BuildTruthTable(std::span<const ClassLabel> predictions,
                           std::span<const ClassLabel> truth);

// Pr(true = c | predicted = c) per class; nullopt for an empty column.
std::array<std::optional<double>, 3> ConditionalProbabilities(
    const TruthTable& table);

// Central binomial interval for the observed accuracy under a null of p0:
// [q_lo / n, q_hi / n] with q_lo the smallest k whose CDF reaches
// (1 - level) / 2 and q_hi the smallest k whose CDF reaches 1 - (1 - level) / 2.
std::pair<double, double> NullAccuracyCi(std::uint64_t n_predicted,
                                         double p0 = 0.95, double level = 0.95);

struct TurnoutRow {
  std::string key;
  double matched_turnout = 0.0;  // voters / (voters + abstainers)
  std::uint64_t matched_count = 0;
};

// Keys with no matched records are omitted. Throws Error(kMissingTruth) if a
// matched user has no key.
std::vector<TurnoutRow> GroupedTurnoutReport(
    const std::map<std::string, ClassificationResult>& results,
    const std::map<std::string, std::string>& grouping_key);

// "user_id,label"
std::map<std::string, ClassLabel> ReadTruthCsv(std::istream& in);

// "true_class,pred_abstainer,pred_voter,pred_unmatched"
void WriteTruthTableCsv(std::ostream& out, const TruthTable& table);
// "class,probability,ci_lo,ci_hi"; NA marks an undefined probability and the
// unmatched row carries no interval.
void WriteSummaryCsv(std::ostream& out, const TruthTable& table,
                     double p0 = 0.95, double level = 0.95);
// "key,matched_turnout,matched_count"
void WriteTurnoutCsv(std::ostream& out, std::span<const TurnoutRow> rows);

}  // namespace yahtzee

#endif  // YAHTZEE_VALIDATION_H_
