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

#include <algorithm>
#include <cmath>
#include <random>

#include "fmt/format.h"
#include "yahtzee/errors.h"

namespace yahtzee {

void SimulationConfig::Validate() const {
  if (!(t > 0.0 && t < 1.0)) {
    throw Error(ErrorCode::kConfig, fmt::format("turnout t={} not in (0,1)", t));
  }
  if (!(mm > 0.0 && mm <= 1.0)) {
    throw Error(ErrorCode::kConfig, fmt::format("match rate mm={} not in (0,1]", mm));
  }
  if (n < 1000) {
    throw Error(ErrorCode::kConfig, fmt::format("population n={} < 1000", n));
  }
  if (g < 2 || g > 255) {
    throw Error(ErrorCode::kConfig, fmt::format("group size g={} not in [2,255]", g));
  }
  if (!(target_accuracy > 0.0 && target_accuracy < 1.0)) {
    throw Error(ErrorCode::kConfig,
                fmt::format("target accuracy {} not in (0,1)", target_accuracy));
  }
  if (replicates < 1 || grid_step < 1 || grid_cap < grid_step) {
    throw Error(ErrorCode::kConfig, "replicates and grid must be positive");
  }
}

ClassSizes ComputeClassSizes(const SimulationConfig& cfg) {
  const double n = static_cast<double>(cfg.n);
  ClassSizes s;
  s.abstainers = static_cast<std::size_t>(std::llround(cfg.mm * (1.0 - cfg.t) * n));
  s.voters = static_cast<std::size_t>(std::llround(cfg.mm * cfg.t * n));
  s.unmatched = cfg.n - s.abstainers - s.voters;
  return s;
}

std::vector<ClassLabel> SimulatedTruth(const SimulationConfig& cfg) {
  const ClassSizes s = ComputeClassSizes(cfg);
  std::vector<ClassLabel> truth;
  truth.reserve(cfg.n);
  truth.insert(truth.end(), s.abstainers, ClassLabel::kMatchedAbstainer);
  truth.insert(truth.end(), s.voters, ClassLabel::kMatchedVoter);
  truth.insert(truth.end(), s.unmatched, ClassLabel::kUnmatched);
  return truth;
}

DrawSource::DrawSource(const SimulationConfig& cfg,
                       std::span<const ClassLabel> truth,
                       std::uint64_t replicate)
    : t_(cfg.t), g_(cfg.g), seed_(cfg.rng_seed), replicate_(replicate),
      truth_(truth) {}

std::size_t DrawSource::block_end(std::size_t b) const {
  return std::min(truth_.size(), (b + 1) * kBlockSize);
}

void DrawSource::FillBlockColumn(std::size_t block, int column,
                                 std::span<std::uint8_t> out) const {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  std::seed_seq seq{lo(seed_),       hi(seed_),
                    lo(replicate_),  hi(replicate_),
                    lo(block),       hi(block),
                    static_cast<std::uint32_t>(column)};
  std::mt19937_64 engine(seq);
  std::binomial_distribution<int> matched(g_ - 1, t_);
  std::binomial_distribution<int> unmatched(g_, t_);

  const std::size_t begin = block_begin(block);
  const std::size_t end = block_end(block);
  for (std::size_t i = begin; i < end; ++i) {
    int y = 0;
    switch (truth_[i]) {
      case ClassLabel::kMatchedAbstainer: y = matched(engine); break;
      case ClassLabel::kMatchedVoter: y = matched(engine) + 1; break;
      case ClassLabel::kUnmatched: y = unmatched(engine); break;
    }
    out[i - begin] = static_cast<std::uint8_t>(y);
  }
}

SimulatedPopulation SimulatePopulation(const SimulationConfig& cfg, int m,
                                       std::uint64_t replicate) {
  cfg.Validate();
  if (m < 0) throw Error(ErrorCode::kConfig, "negative draw count");
  SimulatedPopulation pop;
  pop.truth = SimulatedTruth(cfg);
  pop.draws = DrawMatrix(cfg.n, static_cast<std::size_t>(m));
  const DrawSource source(cfg, pop.truth, replicate);
  std::vector<std::uint8_t> buffer;
  for (std::size_t b = 0; b < source.num_blocks(); ++b) {
    const std::size_t begin = source.block_begin(b);
    buffer.resize(source.block_end(b) - begin);
    for (int c = 0; c < m; ++c) {
      source.FillBlockColumn(b, c, buffer);
      for (std::size_t i = 0; i < buffer.size(); ++i) {
        pop.draws.row(begin + i)[static_cast<std::size_t>(c)] = buffer[i];
      }
    }
  }
  return pop;
}

}  // namespace yahtzee
