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

#include "yahtzee/kernels.h"

#include <cstddef>
#include <vector>

#include "yahtzee/identity.h"

namespace yahtzee::kernels {

namespace {

inline void AddDraw(LogLikelihoods& acc, const LogPmfTable& table,
                    std::uint8_t y) {
  for (ClassLabel h : kAllLabels) acc[h] += table(h, y);
}

inline void AccumulateBlock(const DrawSource& source, std::size_t block,
                            int col_begin, int col_end,
                            const LogPmfTable& table,
                            std::span<LogLikelihoods> acc,
                            std::span<const std::uint8_t> active,
                            std::vector<std::uint8_t>& buffer) {
  const std::size_t begin = source.block_begin(block);
  const std::size_t end = source.block_end(block);
  buffer.resize(end - begin);
  for (int c = col_begin; c < col_end; ++c) {
    source.FillBlockColumn(block, c, buffer);
    for (std::size_t i = begin; i < end; ++i) {
      if (!active.empty() && active[i] == 0) continue;
      AddDraw(acc[i], table, buffer[i - begin]);
    }
  }
}

}  // namespace

void HashGroupIds(std::span<const std::string> keys, std::string_view salt,
                  std::uint64_t divisor, std::span<std::uint32_t> out) {
  const auto n = static_cast<std::ptrdiff_t>(keys.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = static_cast<std::uint32_t>(IdentityHash(keys[i], salt).value %
                                        divisor);
  }
}

void HashGroupIdsSerial(std::span<const std::string> keys,
                        std::string_view salt, std::uint64_t divisor,
                        std::span<std::uint32_t> out) {
  for (std::size_t i = 0; i < keys.size(); ++i) {
    out[i] = static_cast<std::uint32_t>(IdentityHash(keys[i], salt).value %
                                        divisor);
  }
}

void LookupDraws(std::span<const std::uint32_t> group_ids,
                 const GroupCountTable& table, std::span<std::int16_t> out) {
  const auto n = static_cast<std::ptrdiff_t>(group_ids.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto y = table.Lookup(group_ids[i]);
    out[i] = y ? static_cast<std::int16_t>(*y) : kNoDraw;
  }
}

void LookupDrawsSerial(std::span<const std::uint32_t> group_ids,
                       const GroupCountTable& table,
                       std::span<std::int16_t> out) {
  for (std::size_t i = 0; i < group_ids.size(); ++i) {
    const auto y = table.Lookup(group_ids[i]);
    out[i] = y ? static_cast<std::int16_t>(*y) : kNoDraw;
  }
}

void AccumulateLogLikelihoods(const DrawMatrix& draws, std::size_t col_begin,
                              std::size_t col_end, const LogPmfTable& table,
                              std::span<LogLikelihoods> acc) {
  const auto n = static_cast<std::ptrdiff_t>(draws.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto row = draws.row(static_cast<std::size_t>(i));
    for (std::size_t c = col_begin; c < col_end; ++c) {
      AddDraw(acc[i], table, row[c]);
    }
  }
}

void AccumulateLogLikelihoodsSerial(const DrawMatrix& draws,
                                    std::size_t col_begin, std::size_t col_end,
                                    const LogPmfTable& table,
                                    std::span<LogLikelihoods> acc) {
  for (std::size_t i = 0; i < draws.rows; ++i) {
    const auto row = draws.row(i);
    for (std::size_t c = col_begin; c < col_end; ++c) {
      AddDraw(acc[i], table, row[c]);
    }
  }
}

void AccumulateSimulated(const DrawSource& source, int col_begin, int col_end,
                         const LogPmfTable& table,
                         std::span<LogLikelihoods> acc,
                         std::span<const std::uint8_t> active) {
  const auto blocks = static_cast<std::ptrdiff_t>(source.num_blocks());
#pragma omp parallel
  {
    std::vector<std::uint8_t> buffer;
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
      AccumulateBlock(source, static_cast<std::size_t>(b), col_begin, col_end,
                      table, acc, active, buffer);
    }
  }
}

void AccumulateSimulatedSerial(const DrawSource& source, int col_begin,
                               int col_end, const LogPmfTable& table,
                               std::span<LogLikelihoods> acc,
                               std::span<const std::uint8_t> active) {
  std::vector<std::uint8_t> buffer;
  for (std::size_t b = 0; b < source.num_blocks(); ++b) {
    AccumulateBlock(source, b, col_begin, col_end, table, acc, active, buffer);
  }
}

void ArgMaxLabels(std::span<const LogLikelihoods> lls,
                  std::span<ClassLabel> out) {
  const auto n = static_cast<std::ptrdiff_t>(lls.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = ArgMaxLabel(lls[i]);
}

void ArgMaxLabelsSerial(std::span<const LogLikelihoods> lls,
                        std::span<ClassLabel> out) {
  for (std::size_t i = 0; i < lls.size(); ++i) out[i] = ArgMaxLabel(lls[i]);
}

}  // namespace yahtzee::kernels
