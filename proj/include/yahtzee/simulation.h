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

#ifndef YAHTZEE_SIMULATION_H_
#define YAHTZEE_SIMULATION_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "yahtzee/classifier.h"

namespace yahtzee {

struct SimulationConfig {
  double t = 0.45;   // turnout
  double mm = 0.3;   // match rate
  std::size_t n = 100000;
  int g = 5;
  double target_accuracy = 0.95;
  std::uint64_t rng_seed = 1;
  int replicates = 3;
  int grid_step = 5;
  int grid_cap = 500;

  // Throws Error(kConfig) unless 0 < t < 1, 0 < mm <= 1, n >= 1000, g >= 2,
  // replicates >= 1 and a positive grid.
  void Validate() const;
  PopulationParams population() const { return {t, g, mm}; }
};

struct ClassSizes {
  std::size_t abstainers = 0;  // round(mm * (1 - t) * n)
  std::size_t voters = 0;      // round(mm * t * n)
  std::size_t unmatched = 0;   // the rest
};

ClassSizes ComputeClassSizes(const SimulationConfig& cfg);

// Abstainers first, then voters, then unmatched.
std::vector<ClassLabel> SimulatedTruth(const SimulationConfig& cfg);

// Row-major records x draws.
struct DrawMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint8_t> data;

  DrawMatrix() = default;
  DrawMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}

  std::span<std::uint8_t> row(std::size_t i) {
    return {data.data() + i * cols, cols};
  }
  std::span<const std::uint8_t> row(std::size_t i) const {
    return {data.data() + i * cols, cols};
  }
};

// Deterministic source of simulated draws. The value for (record, column)
// depends only on (rng_seed, replicate, record, column): records are split
// into fixed blocks and every (block, column) pair owns an engine seeded
// from those four numbers. Parallel and serial consumers therefore see the
// same draws regardless of thread count or the order columns are requested.
//   abstainer  Binomial(g-1, t)
//   voter      Binomial(g-1, t) + 1
//   unmatched  Binomial(g, t)
class DrawSource {
 public:
  static constexpr std::size_t kBlockSize = 4096;

  DrawSource(const SimulationConfig& cfg, std::span<const ClassLabel> truth,
             std::uint64_t replicate);

  std::size_t num_records() const { return truth_.size(); }
  std::size_t num_blocks() const {
    return (truth_.size() + kBlockSize - 1) / kBlockSize;
  }
  std::size_t block_begin(std::size_t b) const { return b * kBlockSize; }
  std::size_t block_end(std::size_t b) const;

  // Draws of column `column` for every record of block `block`.
  void FillBlockColumn(std::size_t block, int column,
                       std::span<std::uint8_t> out) const;

 private:
  double t_;
  int g_;
  std::uint64_t seed_;
  std::uint64_t replicate_;
  std::span<const ClassLabel> truth_;
};

struct SimulatedPopulation {
  std::vector<ClassLabel> truth;
  DrawMatrix draws;
};

// Materializes `m` draws per record for replicate `replicate`.
SimulatedPopulation SimulatePopulation(const SimulationConfig& cfg, int m,
                                       std::uint64_t replicate = 0);

}  // namespace yahtzee

#endif  // YAHTZEE_SIMULATION_H_
