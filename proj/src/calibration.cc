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

#include <algorithm>
#include <istream>
#include <iterator>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "fmt/format.h"
#include "yahtzee/csv.h"
#include "yahtzee/errors.h"
#include "yahtzee/kernels.h"

namespace yahtzee {

namespace {

// Per-replicate running log-likelihoods over a shared truth vector.
struct Replicate {
  DrawSource source;
  std::vector<LogLikelihoods> acc;
  std::vector<ClassLabel> labels;

  Replicate(const SimulationConfig& cfg, std::span<const ClassLabel> truth,
            std::uint64_t index)
      : source(cfg, truth, index), acc(truth.size()), labels(truth.size()) {}

  void Advance(int from, int to, const LogPmfTable& table,
               std::span<const std::uint8_t> active = {}) {
    kernels::AccumulateSimulated(source, from, to, table, acc, active);
  }

  void Relabel() { kernels::ArgMaxLabels(acc, labels); }
};

bool Meets(const AccuracyCounts& counts, ClassLabel label, double target) {
  const auto acc = counts.Accuracy(label);
  return acc.has_value() && *acc >= target;
}

bool BothMeet(const AccuracyCounts& counts, double target) {
  return Meets(counts, ClassLabel::kMatchedVoter, target) &&
         Meets(counts, ClassLabel::kMatchedAbstainer, target);
}

std::string FormatOptional(const std::optional<double>& v) {
  return v ? fmt::format("{}", *v) : std::string("NA");
}

double Lookup(const std::map<std::string, std::string>& kv,
              const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) {
    throw Error(ErrorCode::kFileFormat,
                fmt::format("calibration report lacks '{}'", key));
  }
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw Error(ErrorCode::kFileFormat,
                fmt::format("bad value '{}' for {}", it->second, key));
  }
}

}  // namespace

AccuracyCounts& AccuracyCounts::operator+=(const AccuracyCounts& other) {
  for (std::size_t i = 0; i < 3; ++i) {
    correct[i] += other.correct[i];
    predicted[i] += other.predicted[i];
  }
  return *this;
}

std::optional<double> AccuracyCounts::Accuracy(ClassLabel label) const {
  const auto i = static_cast<std::size_t>(LabelIndex(label));
  if (predicted[i] == 0) return std::nullopt;
  return static_cast<double>(correct[i]) / static_cast<double>(predicted[i]);
}

AccuracyCounts CountAccuracy(std::span<const ClassLabel> predictions,
                             std::span<const ClassLabel> truth) {
  if (predictions.size() != truth.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                fmt::format("{} predictions vs {} truth labels",
                            predictions.size(), truth.size()));
  }
  AccuracyCounts counts;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const auto p = static_cast<std::size_t>(LabelIndex(predictions[i]));
    ++counts.predicted[p];
    if (predictions[i] == truth[i]) ++counts.correct[p];
  }
  return counts;
}

ConditionalAccuracy ToConditionalAccuracy(const AccuracyCounts& counts) {
  return {counts.Accuracy(ClassLabel::kMatchedVoter),
          counts.Accuracy(ClassLabel::kMatchedAbstainer),
          counts.Accuracy(ClassLabel::kUnmatched)};
}

ConditionalAccuracy EvaluateAccuracy(std::span<const ClassLabel> predictions,
                                     std::span<const ClassLabel> truth) {
  return ToConditionalAccuracy(CountAccuracy(predictions, truth));
}

AccuracyCounts SimulateTwoStage(const SimulationConfig& cfg, int m1, int m2,
                                std::uint64_t replicate) {
  cfg.Validate();
  if (m1 < 1 || m2 < 0) {
    throw Error(ErrorCode::kConfig, fmt::format("invalid m1={} m2={}", m1, m2));
  }
  const LogPmfTable table(cfg.population());
  const std::vector<ClassLabel> truth = SimulatedTruth(cfg);
  Replicate rep(cfg, truth, replicate);
  rep.Advance(0, m1, table);
  rep.Relabel();

  const auto redo = RedoClass(cfg.t);
  if (m2 > 0 && redo) {
    std::vector<std::uint8_t> active(truth.size());
    for (std::size_t i = 0; i < truth.size(); ++i) {
      active[i] = rep.labels[i] == *redo ? 1 : 0;
    }
    rep.Advance(m1, m1 + m2, table, active);
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (active[i]) rep.labels[i] = ArgMaxLabel(rep.acc[i]);
    }
  }
  return CountAccuracy(rep.labels, truth);
}

std::vector<CurvePoint> AccuracyCurve(const SimulationConfig& cfg,
                                      std::span<const int> m_values) {
  cfg.Validate();
  if (m_values.empty()) throw Error(ErrorCode::kConfig, "no m values");
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    if (m_values[i] < 1 || (i > 0 && m_values[i] <= m_values[i - 1])) {
      throw Error(ErrorCode::kConfig,
                  "m values must be positive and strictly ascending");
    }
  }
  const LogPmfTable table(cfg.population());
  const std::vector<ClassLabel> truth = SimulatedTruth(cfg);
  std::vector<AccuracyCounts> pooled(m_values.size());
  for (int r = 0; r < cfg.replicates; ++r) {
    Replicate rep(cfg, truth, static_cast<std::uint64_t>(r));
    int done = 0;
    for (std::size_t k = 0; k < m_values.size(); ++k) {
      rep.Advance(done, m_values[k], table);
      done = m_values[k];
      rep.Relabel();
      pooled[k] += CountAccuracy(rep.labels, truth);
    }
  }
  std::vector<CurvePoint> out;
  for (std::size_t k = 0; k < m_values.size(); ++k) {
    out.push_back({m_values[k], pooled[k].Accuracy(ClassLabel::kMatchedVoter),
                   pooled[k].Accuracy(ClassLabel::kMatchedAbstainer)});
  }
  return out;
}

CalibrationPlan Calibrate(const SimulationConfig& cfg) {
  cfg.Validate();
  const LogPmfTable table(cfg.population());
  const std::vector<ClassLabel> truth = SimulatedTruth(cfg);
  const double target = cfg.target_accuracy;
  const auto redo = RedoClass(cfg.t);

  std::vector<Replicate> reps;
  reps.reserve(static_cast<std::size_t>(cfg.replicates));
  for (int r = 0; r < cfg.replicates; ++r) {
    reps.emplace_back(cfg, truth, static_cast<std::uint64_t>(r));
  }

  // Stage 1: the less common behavior (both at t = 0.5) must reach target.
  const auto stage1_met = [&](const AccuracyCounts& c) {
    if (!redo) return BothMeet(c, target);
    const ClassLabel less = *redo == ClassLabel::kMatchedAbstainer
                                ? ClassLabel::kMatchedVoter
                                : ClassLabel::kMatchedAbstainer;
    return Meets(c, less, target);
  };
  CalibrationPlan plan;
  for (int m = cfg.grid_step;; m += cfg.grid_step) {
    if (m > cfg.grid_cap) {
      throw Error(ErrorCode::kTargetUnreachable,
                  fmt::format("stage 1 misses target {} up to {} draws",
                              target, cfg.grid_cap));
    }
    AccuracyCounts pooled;
    for (Replicate& rep : reps) {
      rep.Advance(m - cfg.grid_step, m, table);
      rep.Relabel();
      pooled += CountAccuracy(rep.labels, truth);
    }
    if (stage1_met(pooled)) {
      plan.m1 = m;
      break;
    }
  }

  // Stage 2: extra draws for the redo set until both classes meet target.
  plan.redo_class = redo;
  if (redo) {
    std::vector<std::vector<std::uint8_t>> active(reps.size());
    for (std::size_t r = 0; r < reps.size(); ++r) {
      active[r].resize(truth.size());
      for (std::size_t i = 0; i < truth.size(); ++i) {
        active[r][i] = reps[r].labels[i] == *redo ? 1 : 0;
      }
    }
    for (int m2 = 0;; m2 += cfg.grid_step) {
      if (plan.m1 + m2 > cfg.grid_cap) {
        throw Error(ErrorCode::kTargetUnreachable,
                    fmt::format("stage 2 misses target {} up to {} draws",
                                target, cfg.grid_cap));
      }
      AccuracyCounts pooled;
      for (std::size_t r = 0; r < reps.size(); ++r) {
        Replicate& rep = reps[r];
        if (m2 > 0) {
          rep.Advance(plan.m1 + m2 - cfg.grid_step, plan.m1 + m2, table,
                      active[r]);
          for (std::size_t i = 0; i < truth.size(); ++i) {
            if (active[r][i]) rep.labels[i] = ArgMaxLabel(rep.acc[i]);
          }
        }
        pooled += CountAccuracy(rep.labels, truth);
      }
      if (BothMeet(pooled, target)) {
        plan.m2 = m2;
        break;
      }
    }
  }

  const AccuracyCounts fresh = SimulateTwoStage(
      cfg, plan.m1, plan.m2, static_cast<std::uint64_t>(cfg.replicates));
  plan.achieved_accuracy_voter =
      fresh.Accuracy(ClassLabel::kMatchedVoter).value_or(0.0);
  plan.achieved_accuracy_abstainer =
      fresh.Accuracy(ClassLabel::kMatchedAbstainer).value_or(0.0);
  return plan;
}

void WriteCalibrationReport(std::ostream& out, const SimulationConfig& cfg,
                            const CalibrationPlan& plan) {
  csv::WriteKeyValues(
      out,
      {{"t", fmt::format("{}", cfg.t)},
       {"mm", fmt::format("{}", cfg.mm)},
       {"n", fmt::format("{}", cfg.n)},
       {"g", fmt::format("{}", cfg.g)},
       {"target_accuracy", fmt::format("{}", cfg.target_accuracy)},
       {"rng_seed", fmt::format("{}", cfg.rng_seed)},
       {"replicates", fmt::format("{}", cfg.replicates)},
       {"grid_step", fmt::format("{}", cfg.grid_step)},
       {"grid_cap", fmt::format("{}", cfg.grid_cap)},
       {"m1", fmt::format("{}", plan.m1)},
       {"m2", fmt::format("{}", plan.m2)},
       {"redo_class", plan.redo_class
                          ? std::string(LabelName(*plan.redo_class))
                          : std::string("none")},
       {"achieved_accuracy_voter",
        fmt::format("{}", plan.achieved_accuracy_voter)},
       {"achieved_accuracy_abstainer",
        fmt::format("{}", plan.achieved_accuracy_abstainer)}});
}

CalibrationPlan ReadCalibrationReport(std::istream& in) {
  const auto kv = csv::ReadKeyValues(in);
  CalibrationPlan plan;
  plan.m1 = static_cast<int>(Lookup(kv, "m1"));
  plan.m2 = static_cast<int>(Lookup(kv, "m2"));
  plan.achieved_accuracy_voter = Lookup(kv, "achieved_accuracy_voter");
  plan.achieved_accuracy_abstainer = Lookup(kv, "achieved_accuracy_abstainer");
  const auto it = kv.find("redo_class");
  if (it != kv.end() && it->second != "none") {
    plan.redo_class = ParseLabel(it->second);
  }
  return plan;
}

void WriteCurveCsv(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "m,acc_voter,acc_abstainer\n";
  for (const CurvePoint& p : curve) {
    out << p.m << ',' << FormatOptional(p.acc_voter) << ','
        << FormatOptional(p.acc_abstainer) << '\n';
  }
}

std::unordered_set<std::uint32_t> EstimationHashes(
    std::span<const CanonicalIdentity> identities, const RoundSeed& salt) {
  std::unordered_set<std::uint32_t> out;
  out.reserve(identities.size());
  for (const CanonicalIdentity& id : identities) {
    out.insert(IdentityHash(id, salt).value);
  }
  return out;
}

double EstimateMatchRate(std::span<const CanonicalIdentity> sample,
                         const std::unordered_set<std::uint32_t>& registry_hashes,
                         const RoundSeed& salt) {
  if (sample.empty()) throw Error(ErrorCode::kConfig, "empty sample");
  std::size_t hits = 0;
  for (const CanonicalIdentity& id : sample) {
    hits += registry_hashes.contains(IdentityHash(id, salt).value) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(sample.size());
}

std::vector<std::size_t> SampleIndices(std::size_t n, std::size_t k,
                                       std::uint64_t seed) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::vector<std::size_t> out;
  out.reserve(std::min(n, k));
  std::mt19937_64 engine(seed);
  std::sample(all.begin(), all.end(), std::back_inserter(out), k, engine);
  return out;
}

}  // namespace yahtzee
