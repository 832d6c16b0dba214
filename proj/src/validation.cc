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

#include "yahtzee/validation.h"

#include <cmath>
#include <istream>
#include <ostream>

#include "fmt/format.h"
#include "yahtzee/csv.h"
#include "yahtzee/errors.h"

namespace yahtzee {

namespace {

// Smallest k in [0, n] with P(X <= k) >= q for X ~ Binomial(n, p).
std::uint64_t BinomialQuantile(std::uint64_t n, double p, double q) {
  const double log_p = std::log(p);
  const double log_1mp = std::log1p(-p);
  const double dn = static_cast<double>(n);
  double cdf = 0.0;
  for (std::uint64_t k = 0; k <= n; ++k) {
    const double dk = static_cast<double>(k);
    const double log_pmf = std::lgamma(dn + 1) - std::lgamma(dk + 1) -
                           std::lgamma(dn - dk + 1) + dk * log_p +
                           (dn - dk) * log_1mp;
    cdf += std::exp(log_pmf);
    // Relative fuzz so exact boundary hits are not lost to rounding.
    if (cdf >= q * (1.0 - 64 * 2.2e-16)) return k;
  }
  return n;
}

}  // namespace

std::uint64_t TruthTable::Total() const {
  std::uint64_t total = 0;
  for (const auto& row : counts) {
    for (std::uint64_t c : row) total += c;
  }
  return total;
}

std::uint64_t TruthTable::TrueCount(ClassLabel label) const {
  std::uint64_t s = 0;
  for (std::uint64_t c : counts[LabelIndex(label)]) s += c;
  return s;
}

std::uint64_t TruthTable::PredictedCount(ClassLabel label) const {
  std::uint64_t s = 0;
  for (const auto& row : counts) s += row[LabelIndex(label)];
  return s;
}

TruthTable BuildTruthTable(
    const std::map<std::string, ClassificationResult>& results,
    const std::map<std::string, ClassLabel>& truth) {
  TruthTable table;
  for (const auto& [id, r] : results) {
    const auto it = truth.find(id);
    if (it == truth.end()) {
      throw Error(ErrorCode::kMissingTruth,
                  fmt::format("no truth label for user '{}'", id));
    }
    ++table.counts[LabelIndex(it->second)][LabelIndex(r.label)];
  }
  return table;
}

TruthTable BuildTruthTable(std::span<const ClassLabel> predictions,
                           std::span<const ClassLabel> truth) {
  if (predictions.size() != truth.size()) {
    throw Error(ErrorCode::kMissingTruth,
                fmt::format("{} predictions vs {} truth labels",
                            predictions.size(), truth.size()));
  }
  TruthTable table;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++table.counts[LabelIndex(truth[i])][LabelIndex(predictions[i])];
  }
  return table;
}

std::array<std::optional<double>, 3> ConditionalProbabilities(
    const TruthTable& table) {
  std::array<std::optional<double>, 3> out;
  for (ClassLabel c : kAllLabels) {
    const std::uint64_t predicted = table.PredictedCount(c);
    if (predicted == 0) continue;
    out[LabelIndex(c)] =
        static_cast<double>(table.counts[LabelIndex(c)][LabelIndex(c)]) /
        static_cast<double>(predicted);
  }
  return out;
}

std::pair<double, double> NullAccuracyCi(std::uint64_t n_predicted, double p0,
                                         double level) {
  if (n_predicted < 1) {
    throw Error(ErrorCode::kDomain, "interval needs at least one prediction");
  }
  if (!(p0 > 0.0 && p0 < 1.0) || !(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::kDomain, "p0 and level must lie in (0,1)");
  }
  const double tail = (1.0 - level) / 2.0;
  const double n = static_cast<double>(n_predicted);
  return {static_cast<double>(BinomialQuantile(n_predicted, p0, tail)) / n,
          static_cast<double>(BinomialQuantile(n_predicted, p0, 1.0 - tail)) / n};
}

std::vector<TurnoutRow> GroupedTurnoutReport(
    const std::map<std::string, ClassificationResult>& results,
    const std::map<std::string, std::string>& grouping_key) {
  struct Tally {
    std::uint64_t voters = 0;
    std::uint64_t abstainers = 0;
  };
  std::map<std::string, Tally> tallies;
  for (const auto& [id, r] : results) {
    if (r.label == ClassLabel::kUnmatched) continue;
    const auto it = grouping_key.find(id);
    if (it == grouping_key.end()) {
      throw Error(ErrorCode::kMissingTruth,
                  fmt::format("no grouping key for matched user '{}'", id));
    }
    Tally& t = tallies[it->second];
    (r.label == ClassLabel::kMatchedVoter ? t.voters : t.abstainers) += 1;
  }
  std::vector<TurnoutRow> rows;
  for (const auto& [key, t] : tallies) {
    const std::uint64_t matched = t.voters + t.abstainers;
    rows.push_back({key,
                    static_cast<double>(t.voters) / static_cast<double>(matched),
                    matched});
  }
  return rows;
}

std::map<std::string, ClassLabel> ReadTruthCsv(std::istream& in) {
  csv::ExpectHeader(in, {"user_id", "label"});
  std::map<std::string, ClassLabel> out;
  std::string line;
  while (csv::NextLine(in, line)) {
    if (line.empty()) continue;
    const auto f = csv::SplitLine(line);
    if (f.size() != 2) {
      throw Error(ErrorCode::kFileFormat, fmt::format("bad truth row '{}'", line));
    }
    if (!out.emplace(f[0], ParseLabel(f[1])).second) {
      throw Error(ErrorCode::kFileFormat,
                  fmt::format("duplicate truth for '{}'", f[0]));
    }
  }
  return out;
}

void WriteTruthTableCsv(std::ostream& out, const TruthTable& table) {
  out << "true_class,pred_abstainer,pred_voter,pred_unmatched\n";
  for (ClassLabel c : kAllLabels) {
    const auto& row = table.counts[LabelIndex(c)];
    out << LabelName(c) << ',' << row[0] << ',' << row[1] << ',' << row[2]
        << '\n';
  }
}

void WriteSummaryCsv(std::ostream& out, const TruthTable& table, double p0,
                     double level) {
  const auto probs = ConditionalProbabilities(table);
  out << "class,probability,ci_lo,ci_hi\n";
  for (ClassLabel c : kAllLabels) {
    const auto& p = probs[LabelIndex(c)];
    out << LabelName(c) << ',' << (p ? fmt::format("{:.3f}", *p) : "NA");
    const std::uint64_t n = table.PredictedCount(c);
    if (c != ClassLabel::kUnmatched && n > 0) {
      const auto [lo, hi] = NullAccuracyCi(n, p0, level);
      out << fmt::format(",{:.3f},{:.3f}\n", lo, hi);
    } else {
      out << ",,\n";
    }
  }
}

void WriteTurnoutCsv(std::ostream& out, std::span<const TurnoutRow> rows) {
  out << "key,matched_turnout,matched_count\n";
  for (const TurnoutRow& r : rows) {
    out << csv::Field(r.key) << ',' << fmt::format("{}", r.matched_turnout)
        << ',' << r.matched_count << '\n';
  }
}

}  // namespace yahtzee
