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

#include "test_util.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace yahtzee::testing {

namespace {

std::string Letters(std::uint64_t i) {
  std::string s;
  do {
    s.push_back(static_cast<char>('A' + i % 26));
    i /= 26;
  } while (i > 0);
  return s;
}

}  // namespace

CanonicalIdentity SyntheticIdentity(std::uint64_t i, const std::string& prefix) {
  // Name carries the index; the date varies so dates are exercised too.
  return CanonicalIdentity::Create(prefix + Letters(i), "X" + Letters(i * 7919 % 1000003),
                                   static_cast<int>(1 + i % 28),
                                   static_cast<int>(1 + (i / 28) % 12),
                                   static_cast<int>(1930 + i % 70));
}

std::vector<RegistryRecord> SyntheticRegistry(std::size_t n, double p,
                                              std::uint64_t seed) {
  const auto voters = static_cast<std::size_t>(std::llround(p * static_cast<double>(n)));
  std::vector<std::uint8_t> voted(n, 0);
  std::fill(voted.begin(), voted.begin() + static_cast<std::ptrdiff_t>(voters), 1);
  std::mt19937_64 rng(seed);
  std::shuffle(voted.begin(), voted.end(), rng);
  std::vector<RegistryRecord> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({SyntheticIdentity(i, "R"), voted[i] == 1});
  }
  return out;
}

SyntheticWorld MakeWorld(std::size_t n_registry, double p,
                         std::size_t n_platform, double match_rate,
                         std::uint64_t seed) {
  SyntheticWorld w;
  w.registry = SyntheticRegistry(n_registry, p, seed);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const auto matched = static_cast<std::size_t>(
      std::llround(match_rate * static_cast<double>(n_platform)));

  std::vector<std::size_t> idx(n_registry);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::shuffle(idx.begin(), idx.end(), rng);

  for (std::size_t k = 0; k < n_platform; ++k) {
    PlatformRecord rec;
    rec.user_id = "u" + std::to_string(k);
    if (k < matched) {
      const RegistryRecord& r = w.registry[idx[k]];
      rec.identity = r.identity;
      w.truth[rec.user_id] =
          r.voted ? ClassLabel::kMatchedVoter : ClassLabel::kMatchedAbstainer;
    } else {
      rec.identity = SyntheticIdentity(k, "P");
      w.truth[rec.user_id] = ClassLabel::kUnmatched;
    }
    rec.attribute = (k % 2 == 0) ? "even" : "odd";
    w.platform.push_back(std::move(rec));
  }
  std::shuffle(w.platform.begin(), w.platform.end(), rng);
  return w;
}

double LogDbinom(int x, int size, double prob) {
  if (x < 0 || x > size) return -std::numeric_limits<double>::infinity();
  return std::lgamma(size + 1.0) - std::lgamma(x + 1.0) -
         std::lgamma(size - x + 1.0) + x * std::log(prob) +
         (size - x) * std::log1p(-prob);
}

std::vector<ClassLabel> TranscribedTwoStage(const DrawMatrix& y, int m1, int m2,
                                            double t, int g) {
  const auto predict = [&](std::size_t i, int cols) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int c = 0; c < cols; ++c) {
      const int v = y.row(i)[static_cast<std::size_t>(c)];
      s0 += LogDbinom(v, g - 1, t);
      s1 += LogDbinom(v - 1, g - 1, t);
      s2 += LogDbinom(v, g, t);
    }
    // which.max returns the first maximum.
    int best = 0;
    double top = s0;
    if (s1 > top) { best = 1; top = s1; }
    if (s2 > top) best = 2;
    return static_cast<ClassLabel>(best);
  };
  std::vector<ClassLabel> pred(y.rows);
  for (std::size_t i = 0; i < y.rows; ++i) pred[i] = predict(i, m1);
  if (m2 > 0) {
    const ClassLabel redo =
        t < 0.5 ? ClassLabel::kMatchedAbstainer : ClassLabel::kMatchedVoter;
    for (std::size_t i = 0; i < y.rows; ++i) {
      if (pred[i] == redo) pred[i] = predict(i, m1 + m2);
    }
  }
  return pred;
}

}  // namespace yahtzee::testing
