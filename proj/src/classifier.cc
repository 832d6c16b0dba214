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

#include "yahtzee/classifier.h"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>

#include "fmt/format.h"
#include "yahtzee/csv.h"
#include "yahtzee/draws.h"
#include "yahtzee/errors.h"

namespace yahtzee {

namespace {

double Choose(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

double BinomialPmf(int k, int n, double p) {
  if (k < 0 || k > n) return 0.0;
  return Choose(n, k) * std::pow(p, k) * std::pow(1.0 - p, n - k);
}

double ParseDouble(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) {
    throw Error(ErrorCode::kFileFormat, fmt::format("bad number '{}'", s));
  }
  return v;
}

int ParseInt(const std::string& s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::kFileFormat, fmt::format("bad integer '{}'", s));
  }
  return v;
}

}  // namespace

std::string_view LabelName(ClassLabel label) {
  switch (label) {
    case ClassLabel::kMatchedAbstainer: return "abstainer";
    case ClassLabel::kMatchedVoter: return "voter";
    case ClassLabel::kUnmatched: return "unmatched";
  }
  return "unknown";
}

ClassLabel ParseLabel(std::string_view name) {
  for (ClassLabel label : kAllLabels) {
    if (LabelName(label) == name) return label;
  }
  throw Error(ErrorCode::kFileFormat, fmt::format("unknown label '{}'", name));
}

void PopulationParams::Validate() const {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorCode::kDomain, fmt::format("turnout p={} not in (0,1)", p));
  }
  if (g < 2 || g > 255) {
    throw Error(ErrorCode::kDomain, fmt::format("group size g={} not in [2,255]", g));
  }
  if (!(match_rate > 0.0 && match_rate <= 1.0)) {
    throw Error(ErrorCode::kDomain,
                fmt::format("match rate {} not in (0,1]", match_rate));
  }
}

double DrawPmf(int y, ClassLabel hypothesis, const PopulationParams& params) {
  params.Validate();
  const int g = params.g;
  if (y < 0 || y > g) {
    throw Error(ErrorCode::kDomain, fmt::format("draw {} outside [0,{}]", y, g));
  }
  switch (hypothesis) {
    case ClassLabel::kUnmatched: return BinomialPmf(y, g, params.p);
    // The record's own vote is always one of the y.
    case ClassLabel::kMatchedVoter: return BinomialPmf(y - 1, g - 1, params.p);
    case ClassLabel::kMatchedAbstainer: return BinomialPmf(y, g - 1, params.p);
  }
  return 0.0;
}

LogPmfTable::LogPmfTable(const PopulationParams& params) : g_(params.g) {
  params.Validate();
  table_.resize(static_cast<std::size_t>(3 * (g_ + 1)));
  for (ClassLabel h : kAllLabels) {
    for (int y = 0; y <= g_; ++y) {
      const double pmf = DrawPmf(y, h, params);
      table_[static_cast<std::size_t>(LabelIndex(h) * (g_ + 1) + y)] =
          pmf > 0.0 ? std::log(pmf) : -std::numeric_limits<double>::infinity();
    }
  }
}

LogLikelihoods ComputeLogLikelihoods(std::span<const std::uint8_t> draws,
                                     const LogPmfTable& table) {
  if (draws.empty()) throw Error(ErrorCode::kEmptyDraws, "no draws");
  LogLikelihoods out;
  for (std::uint8_t y : draws) {
    if (y > table.g()) {
      throw Error(ErrorCode::kDomain,
                  fmt::format("draw {} outside [0,{}]", int{y}, table.g()));
    }
    for (ClassLabel h : kAllLabels) out[h] += table(h, y);
  }
  return out;
}

LogLikelihoods ComputeLogLikelihoods(std::span<const std::uint8_t> draws,
                                     const PopulationParams& params) {
  return ComputeLogLikelihoods(draws, LogPmfTable(params));
}

ClassLabel ArgMaxLabel(const LogLikelihoods& lls) {
  ClassLabel best = ClassLabel::kMatchedAbstainer;
  for (ClassLabel h : {ClassLabel::kMatchedVoter, ClassLabel::kUnmatched}) {
    if (lls[h] > lls[best]) best = h;
  }
  return best;
}

ClassificationResult Classify(std::string user_id,
                              std::span<const std::uint8_t> draws,
                              const PopulationParams& params) {
  ClassificationResult r;
  r.user_id = std::move(user_id);
  r.lls = ComputeLogLikelihoods(draws, params);
  r.label = ArgMaxLabel(r.lls);
  r.n_draws_used = static_cast<int>(draws.size());
  r.stage = 1;
  return r;
}

std::optional<ClassLabel> RedoClass(double p) {
  if (p < 0.5) return ClassLabel::kMatchedAbstainer;
  if (p > 0.5) return ClassLabel::kMatchedVoter;
  return std::nullopt;
}

std::map<std::string, ClassificationResult> TwoStageClassify(
    const DrawStore& store, std::span<const std::string> users,
    const RoundPlan& plan, const PopulationParams& params) {
  plan.Validate();
  const LogPmfTable table(params);
  const std::size_t m1 = static_cast<std::size_t>(plan.m1);
  const std::size_t m_total = m1 + static_cast<std::size_t>(plan.m2);

  const std::size_t short1 = CountBelowQuota(store, plan.m1, users);
  if (short1 > 0) {
    throw Error(ErrorCode::kQuotaNotMet,
                fmt::format("{} of {} users have fewer than m1={} draws",
                            short1, users.size(), plan.m1));
  }

  for (const std::string& id : users) {
    for (const Draw& d : store.Find(id)->draws) {
      if (d.y > params.g) {
        throw Error(ErrorCode::kDomain,
                    fmt::format("user {} has draw {} > g={}", id, int{d.y},
                                params.g));
      }
    }
  }

  std::vector<ClassificationResult> results(users.size());
  const auto n = static_cast<std::ptrdiff_t>(users.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const DrawVector* v = store.Find(users[i]);
    const auto draws = v->FirstValues(m1);
    ClassificationResult& r = results[i];
    r.user_id = users[i];
    r.lls = ComputeLogLikelihoods(draws, table);
    r.label = ArgMaxLabel(r.lls);
    r.n_draws_used = plan.m1;
    r.stage = 1;
  }

  const std::optional<ClassLabel> redo = RedoClass(params.p);
  if (plan.m2 > 0 && redo) {
    std::size_t short2 = 0;
    for (const ClassificationResult& r : results) {
      if (r.label == *redo && store.DrawCount(r.user_id) < m_total) ++short2;
    }
    if (short2 > 0) {
      throw Error(ErrorCode::kQuotaNotMet,
                  fmt::format("{} redo-set users have fewer than m1+m2={} draws",
                              short2, m_total));
    }
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      ClassificationResult& r = results[i];
      if (r.label != *redo) continue;
      const auto draws = store.Find(r.user_id)->FirstValues(m_total);
      r.lls = ComputeLogLikelihoods(draws, table);
      r.label = ArgMaxLabel(r.lls);
      r.n_draws_used = static_cast<int>(m_total);
      r.stage = 2;
    }
  }

  std::map<std::string, ClassificationResult> out;
  for (ClassificationResult& r : results) {
    std::string id = r.user_id;
    out.emplace(std::move(id), std::move(r));
  }
  return out;
}

void WriteClassificationCsv(
    std::ostream& out,
    const std::map<std::string, ClassificationResult>& results) {
  out << "user_id,label,ll_abstainer,ll_voter,ll_unmatched,n_draws_used,stage\n";
  for (const auto& [id, r] : results) {
    out << fmt::format("{},{},{},{},{},{},{}\n", csv::Field(id),
                       LabelName(r.label), r.lls[ClassLabel::kMatchedAbstainer],
                       r.lls[ClassLabel::kMatchedVoter],
                       r.lls[ClassLabel::kUnmatched], r.n_draws_used, r.stage);
  }
}

std::map<std::string, ClassificationResult> ReadClassificationCsv(
    std::istream& in) {
  csv::ExpectHeader(in, {"user_id", "label", "ll_abstainer", "ll_voter",
                         "ll_unmatched", "n_draws_used", "stage"});
  std::map<std::string, ClassificationResult> out;
  std::string line;
  while (csv::NextLine(in, line)) {
    if (line.empty()) continue;
    const auto f = csv::SplitLine(line);
    if (f.size() != 7) {
      throw Error(ErrorCode::kFileFormat,
                  fmt::format("bad classification row '{}'", line));
    }
    ClassificationResult r;
    r.user_id = f[0];
    r.label = ParseLabel(f[1]);
    r.lls[ClassLabel::kMatchedAbstainer] = ParseDouble(f[2]);
    r.lls[ClassLabel::kMatchedVoter] = ParseDouble(f[3]);
    r.lls[ClassLabel::kUnmatched] = ParseDouble(f[4]);
    r.n_draws_used = ParseInt(f[5]);
    r.stage = ParseInt(f[6]);
    if (!out.emplace(r.user_id, r).second) {
      throw Error(ErrorCode::kFileFormat,
                  fmt::format("duplicate user_id '{}'", r.user_id));
    }
  }
  return out;
}

}  // namespace yahtzee
