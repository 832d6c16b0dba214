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

#ifndef YAHTZEE_KERNELS_H_
#define YAHTZEE_KERNELS_H_

// Data-parallel inner loops. Each OpenMP kernel has a plain serial twin that
// tests use as the reference and the benchmark compares against; both must
// produce bit-identical output.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "yahtzee/classifier.h"
#include "yahtzee/grouping.h"
#include "yahtzee/simulation.h"

namespace yahtzee::kernels {

// out[i] = IdentityHash(keys[i], salt) mod divisor.
void HashGroupIds(std::span<const std::string> keys, std::string_view salt,
                  std::uint64_t divisor, std::span<std::uint32_t> out);
void HashGroupIdsSerial(std::span<const std::string> keys,
                        std::string_view salt, std::uint64_t divisor,
                        std::span<std::uint32_t> out);

inline constexpr std::int16_t kNoDraw = -1;

// out[i] = voter count of group_ids[i] in `table`, or kNoDraw.
void LookupDraws(std::span<const std::uint32_t> group_ids,
                 const GroupCountTable& table, std::span<std::int16_t> out);
void LookupDrawsSerial(std::span<const std::uint32_t> group_ids,
                       const GroupCountTable& table,
                       std::span<std::int16_t> out);

// acc[i] += log-likelihoods of draws[i][col_begin, col_end).
void AccumulateLogLikelihoods(const DrawMatrix& draws, std::size_t col_begin,
                              std::size_t col_end, const LogPmfTable& table,
                              std::span<LogLikelihoods> acc);
void AccumulateLogLikelihoodsSerial(const DrawMatrix& draws,
                                    std::size_t col_begin, std::size_t col_end,
                                    const LogPmfTable& table,
                                    std::span<LogLikelihoods> acc);

// Streams simulated draws for columns [col_begin, col_end) straight into the
// accumulators without materializing a matrix. Records with active[i] == 0
// are skipped (their draws are still generated, keeping streams aligned).
// An empty `active` means all records.
void AccumulateSimulated(const DrawSource& source, int col_begin, int col_end,
                         const LogPmfTable& table,
                         std::span<LogLikelihoods> acc,
                         std::span<const std::uint8_t> active = {});
void AccumulateSimulatedSerial(const DrawSource& source, int col_begin,
                               int col_end, const LogPmfTable& table,
                               std::span<LogLikelihoods> acc,
                               std::span<const std::uint8_t> active = {});

void ArgMaxLabels(std::span<const LogLikelihoods> lls,
                  std::span<ClassLabel> out);
void ArgMaxLabelsSerial(std::span<const LogLikelihoods> lls,
                        std::span<ClassLabel> out);

}  // namespace yahtzee::kernels

#endif  // YAHTZEE_KERNELS_H_
