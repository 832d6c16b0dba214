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

// Serial reference kernels against their OpenMP counterparts.

#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "yahtzee/classifier.h"
#include "yahtzee/grouping.h"
#include "yahtzee/identity.h"
#include "yahtzee/kernels.h"
#include "yahtzee/simulation.h"

namespace yahtzee {
namespace {

std::vector<std::string> Keys(std::size_t n) {
  std::vector<std::string> keys;
  keys.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    keys.push_back(CanonicalIdentity::Create("N" + std::to_string(i), "SURNAME",
                                             1 + static_cast<int>(i % 28), 1 + static_cast<int>(i % 12),
                                             1940 + static_cast<int>(i % 60))
                       .Serialize());
  }
  return keys;
}

template <bool kParallel>
void BM_HashGroupIds(benchmark::State& state) {
  const auto keys = Keys(static_cast<std::size_t>(state.range(0)));
  const std::string salt = RoundSeed::Derive(1, 0).salt;
  std::vector<std::uint32_t> out(keys.size());
  for (auto _ : state) {
    if constexpr (kParallel) {
      kernels::HashGroupIds(keys, salt, keys.size() / 5, out);
    } else {
      kernels::HashGroupIdsSerial(keys, salt, keys.size() / 5, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool kParallel>
void BM_AccumulateSimulated(benchmark::State& state) {
  SimulationConfig cfg;
  cfg.n = static_cast<std::size_t>(state.range(0));
  const auto truth = SimulatedTruth(cfg);
  const DrawSource source(cfg, truth, 0);
  const LogPmfTable table(cfg.population());
  std::vector<LogLikelihoods> acc(cfg.n);
  for (auto _ : state) {
    if constexpr (kParallel) {
      kernels::AccumulateSimulated(source, 0, 10, table, acc);
    } else {
      kernels::AccumulateSimulatedSerial(source, 0, 10, table, acc);
    }
    benchmark::DoNotOptimize(acc.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}

template <bool kParallel>
void BM_AccumulateLogLikelihoods(benchmark::State& state) {
  SimulationConfig cfg;
  cfg.n = static_cast<std::size_t>(state.range(0));
  const auto pop = SimulatePopulation(cfg, 50);
  const LogPmfTable table(cfg.population());
  std::vector<LogLikelihoods> acc(cfg.n);
  for (auto _ : state) {
    if constexpr (kParallel) {
      kernels::AccumulateLogLikelihoods(pop.draws, 0, 50, table, acc);
    } else {
      kernels::AccumulateLogLikelihoodsSerial(pop.draws, 0, 50, table, acc);
    }
    benchmark::DoNotOptimize(acc.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 50);
}

template <bool kParallel>
void BM_ArgMaxLabels(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<LogLikelihoods> lls(n);
  for (std::size_t i = 0; i < n; ++i) {
    lls[i] = {{-double(i % 7), -double(i % 5), -double(i % 3)}};
  }
  std::vector<ClassLabel> out(n);
  for (auto _ : state) {
    if constexpr (kParallel) {
      kernels::ArgMaxLabels(lls, out);
    } else {
      kernels::ArgMaxLabelsSerial(lls, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_HashGroupIds<false>)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HashGroupIds<true>)->Arg(50000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AccumulateSimulated<false>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AccumulateSimulated<true>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AccumulateLogLikelihoods<false>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AccumulateLogLikelihoods<true>)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ArgMaxLabels<false>)->Arg(1000000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ArgMaxLabels<true>)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace yahtzee

BENCHMARK_MAIN();
