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

#ifndef YAHTZEE_CLASSIFIER_H_
#define YAHTZEE_CLASSIFIER_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace yahtzee {

class DrawStore;
struct RoundPlan;

// Codes follow the reference convention: 0 abstainer, 1 voter, 2 unmatched.
enum class ClassLabel : std::uint8_t {
  kMatchedAbstainer = 0,
  kMatchedVoter = 1,
  kUnmatched = 2,
};

inline constexpr std::array<ClassLabel, 3> kAllLabels = {
    ClassLabel::kMatchedAbstainer, ClassLabel::kMatchedVoter,
    ClassLabel::kUnmatched};

inline constexpr int LabelIndex(ClassLabel label) {
  return static_cast<int>(label);
}

// "abstainer" | "voter" | "unmatched".
std::string_view LabelName(ClassLabel label);
// Throws Error(kFileFormat) for anything else.
ClassLabel ParseLabel(std::string_view name);

struct PopulationParams {
  double p = 0.5;           // registry turnout, 0 < p < 1
  int g = 5;                // group size, g >= 2
  double match_rate = 1.0;  // only used by calibration

  // Throws Error(kDomain) on out-of-range values.
  void Validate() const;
};

// Probability of a single draw y under `hypothesis`:
//   unmatched  Binomial(g, p) at y
//   voter      Binomial(g-1, p) at y-1 (zero at y = 0)
//   abstainer  Binomial(g-1, p) at y   (zero at y = g)
// Throws Error(kDomain) if y is outside [0, g].
double DrawPmf(int y, ClassLabel hypothesis, const PopulationParams& params);

// ln DrawPmf for every (hypothesis, y), with -inf for impossible draws.
class LogPmfTable {
 public:
  explicit LogPmfTable(const PopulationParams& params);

  double operator()(ClassLabel hypothesis, int y) const {
    return table_[static_cast<std::size_t>(LabelIndex(hypothesis) * (g_ + 1) + y)];
  }
  int g() const { return g_; }

 private:
  int g_;
  std::vector<double> table_;
};

// Natural-log likelihoods indexed by LabelIndex().
struct LogLikelihoods {
  std::array<double, 3> ll{0.0, 0.0, 0.0};

  double& operator[](ClassLabel label) { return ll[LabelIndex(label)]; }
  double operator[](ClassLabel label) const { return ll[LabelIndex(label)]; }

  friend bool operator==(const LogLikelihoods&, const LogLikelihoods&) = default;
};

// Throws Error(kEmptyDraws) on an empty span, Error(kDomain) on y > g.
LogLikelihoods ComputeLogLikelihoods(std::span<const std::uint8_t> draws,
                                     const LogPmfTable& table);
LogLikelihoods ComputeLogLikelihoods(std::span<const std::uint8_t> draws,
                                     const PopulationParams& params);

// Maximum-likelihood label; ties go to abstainer, then voter, then unmatched.
ClassLabel ArgMaxLabel(const LogLikelihoods& lls);

struct ClassificationResult {
  std::string user_id;
  ClassLabel label = ClassLabel::kUnmatched;
  LogLikelihoods lls;
  int n_draws_used = 0;
  int stage = 1;
};

ClassificationResult Classify(std::string user_id,
                              std::span<const std::uint8_t> draws,
                              const PopulationParams& params);

// Stage-2 target: the more common behavior, or none at p = 0.5.
std::optional<ClassLabel> RedoClass(double p);

// Stage 1 labels every user on the first m1 draws; users whose label equals
// RedoClass(p) are relabeled (over all three hypotheses) on the first
// m1 + m2 draws. `users` lists every record that must be classified.
// Throws Error(kQuotaNotMet) naming the shortfall.
std::map<std::string, ClassificationResult> TwoStageClassify(
    const DrawStore& store, std::span<const std::string> users,
    const RoundPlan& plan, const PopulationParams& params);

// "user_id,label,ll_abstainer,ll_voter,ll_unmatched,n_draws_used,stage".
void WriteClassificationCsv(
    std::ostream& out,
    const std::map<std::string, ClassificationResult>& results);
std::map<std::string, ClassificationResult> ReadClassificationCsv(
    std::istream& in);

}  // namespace yahtzee

#endif  // YAHTZEE_CLASSIFIER_H_
