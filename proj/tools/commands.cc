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

#include "commands.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "fmt/format.h"
#include "fmt/ostream.h"
#include "yahtzee/calibration.h"
#include "yahtzee/classifier.h"
#include "yahtzee/csv.h"
#include "yahtzee/draws.h"
#include "yahtzee/errors.h"
#include "yahtzee/grouping.h"
#include "yahtzee/identity.h"
#include "yahtzee/records.h"
#include "yahtzee/simulation.h"
#include "yahtzee/validation.h"

namespace yahtzee::cli {

namespace {

namespace fs = std::filesystem;

// Every field is addressable from the config file under the same name as
// its long option. File paths additionally honor YAHTZEE_<NAME> variables.
struct ProtocolConfig {
  std::uint32_t g = 5;
  std::uint64_t master_seed = 0;
  std::uint64_t n_registry = 0;
  double turnout_p = 0.0;
  double target_accuracy = 0.95;
  int m1 = 0;
  int m2 = 0;
  double match_rate = 0.0;
  std::string estimation_salt;

  std::size_t sim_n = 100000;
  std::uint64_t sim_seed = 1;
  int replicates = 3;
  int grid_step = 5;
  int grid_cap = 500;
  std::size_t sample_size = 1000;

  std::string registry_csv = "registry.csv";
  std::string registry_store = "registry/registry_store.csv";
  std::string registry_summary = "exchange/registry_summary.txt";
  std::string estimation_hashes = "exchange/estimation_hashes.txt";
  std::string table_dir = "exchange/tables";
  std::string platform_csv = "platform.csv";
  std::string platform_store = "platform/platform_store.csv";
  std::string draw_store = "platform/draws.csv";
  std::string classification_out = "platform/classification.csv";
  std::string calibration_out = "platform/calibration.txt";
  std::string curve_out = "platform/curve.csv";
  std::string truth_csv = "truth.csv";
  std::string validation_prefix = "platform/validation";

  // Which optional fields were supplied (command line, env or config file).
  bool has_n_registry = false;
  bool has_turnout_p = false;
  bool has_m1 = false;
  bool has_m2 = false;
  bool has_match_rate = false;
};

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, fmt::format("cannot read '{}'", path));
  return in;
}

std::ofstream OpenOut(const std::string& path,
                      std::ios::openmode mode = std::ios::trunc) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::out | mode);
  if (!out) throw Error(ErrorCode::kConfig, fmt::format("cannot write '{}'", path));
  return out;
}

struct Aggregates {
  std::uint64_t n_registry = 0;
  double turnout_p = 0.0;
};

// N and p come from the config when given, else from the registry's shared
// summary file.
Aggregates ResolveAggregates(const ProtocolConfig& cfg) {
  Aggregates agg{cfg.n_registry, cfg.turnout_p};
  if (cfg.has_n_registry && cfg.has_turnout_p) return agg;
  if (!fs::exists(cfg.registry_summary)) {
    throw Error(ErrorCode::kConfig,
                "n_registry/turnout_p not configured and no registry summary");
  }
  auto in = OpenIn(cfg.registry_summary);
  const auto kv = csv::ReadKeyValues(in);
  try {
    if (!cfg.has_n_registry) agg.n_registry = std::stoull(kv.at("n_registry"));
    if (!cfg.has_turnout_p) agg.turnout_p = std::stod(kv.at("turnout_p"));
  } catch (const std::exception&) {
    throw Error(ErrorCode::kFileFormat,
                fmt::format("malformed registry summary '{}'", cfg.registry_summary));
  }
  return agg;
}

SimulationConfig MakeSimulationConfig(const ProtocolConfig& cfg, double turnout) {
  if (!cfg.has_match_rate) {
    throw Error(ErrorCode::kConfig,
                "match_rate is required (see estimate-match-rate)");
  }
  SimulationConfig sim;
  sim.t = turnout;
  sim.mm = cfg.match_rate;
  sim.n = cfg.sim_n;
  sim.g = static_cast<int>(cfg.g);
  sim.target_accuracy = cfg.target_accuracy;
  sim.rng_seed = cfg.sim_seed;
  sim.replicates = cfg.replicates;
  sim.grid_step = cfg.grid_step;
  sim.grid_cap = cfg.grid_cap;
  sim.Validate();
  return sim;
}

// m1/m2 from the config, else a calibration report, else a fresh search.
std::optional<RoundPlan> ResolvePlan(const ProtocolConfig& cfg, double turnout,
                                     bool allow_calibrate, std::ostream& out) {
  if (cfg.has_m1) {
    RoundPlan plan{cfg.m1, cfg.has_m2 ? cfg.m2 : 0, 0};
    plan.Validate();
    return plan;
  }
  if (fs::exists(cfg.calibration_out)) {
    auto in = OpenIn(cfg.calibration_out);
    const CalibrationPlan cp = ReadCalibrationReport(in);
    return RoundPlan{cp.m1, cp.m2, 0};
  }
  if (!allow_calibrate) return std::nullopt;
  out << "calibrating (m1, m2) by simulation\n";
  const CalibrationPlan cp = Calibrate(MakeSimulationConfig(cfg, turnout));
  return RoundPlan{cp.m1, cp.m2, 0};
}

RoundSeed EstimationSeed(const ProtocolConfig& cfg) {
  if (cfg.estimation_salt.empty()) return RoundSeed::ForEstimation(cfg.master_seed);
  return RoundSeed{0, cfg.estimation_salt};
}

LoadedRecords<RegistryRecord> LoadRegistry(const std::string& path) {
  auto in = OpenIn(path);
  return LoadRegistryCsv(in);
}

LoadedRecords<PlatformRecord> LoadPlatform(const std::string& path) {
  auto in = OpenIn(path);
  return LoadPlatformCsv(in);
}

DrawStore LoadDrawStore(const std::string& path) {
  if (!fs::exists(path)) return {};
  auto in = OpenIn(path);
  return DrawStore::ReadCsv(in);
}

std::vector<std::string> UserIds(std::span<const PlatformRecord> records) {
  std::vector<std::string> ids;
  ids.reserve(records.size());
  for (const PlatformRecord& r : records) ids.push_back(r.user_id);
  return ids;
}

// ---- registry side -------------------------------------------------------

void RegistryPrepare(const ProtocolConfig& cfg, std::ostream& out) {
  auto loaded = LoadRegistry(cfg.registry_csv);
  const DropStats& s = loaded.stats;
  if (loaded.records.empty()) {
    throw Error(ErrorCode::kEmptyRegistry,
                fmt::format("no usable records in '{}'", cfg.registry_csv));
  }
  const std::uint64_t n = loaded.records.size();
  const double p = Turnout(loaded.records);
  if (cfg.has_n_registry && cfg.n_registry != n) {
    throw Error(ErrorCode::kConfigMismatch,
                fmt::format("configured n_registry={} but file yields {}",
                            cfg.n_registry, n));
  }
  if (cfg.has_turnout_p && std::abs(cfg.turnout_p - p) > 1e-12) {
    throw Error(ErrorCode::kConfigMismatch,
                fmt::format("configured turnout_p={} but file yields {}",
                            cfg.turnout_p, p));
  }
  GroupParams::Create(n, cfg.g);  // fail early on an unusable N/g

  {
    auto f = OpenOut(cfg.registry_store);
    WriteRegistryCsv(f, loaded.records);
  }
  const std::vector<std::pair<std::string, std::string>> summary = {
      {"n_registry", fmt::format("{}", n)},
      {"turnout_p", fmt::format("{}", p)},
      {"g", fmt::format("{}", cfg.g)},
      {"input_rows", fmt::format("{}", s.input_rows)},
      {"dropped_duplicate", fmt::format("{}", s.duplicate)},
      {"dropped_unparseable", fmt::format("{}", s.unparseable)},
  };
  {
    auto f = OpenOut(cfg.registry_summary);
    csv::WriteKeyValues(f, summary);
  }
  {
    std::vector<CanonicalIdentity> ids;
    ids.reserve(loaded.records.size());
    for (const RegistryRecord& r : loaded.records) ids.push_back(r.identity);
    const auto hashes = EstimationHashes(ids, EstimationSeed(cfg));
    std::vector<std::uint32_t> sorted(hashes.begin(), hashes.end());
    std::sort(sorted.begin(), sorted.end());
    auto f = OpenOut(cfg.estimation_hashes);
    for (std::uint32_t h : sorted) f << h << '\n';
  }
  csv::WriteKeyValues(out, summary);
}

void RegistryRound(const ProtocolConfig& cfg, std::uint64_t first_round,
                   std::uint64_t count, const std::string& explicit_out,
                   std::ostream& out) {
  const auto loaded = LoadRegistry(cfg.registry_store);
  if (loaded.records.empty()) {
    throw Error(ErrorCode::kEmptyRegistry, "registry store is empty; run registry-prepare");
  }
  const std::uint64_t n = loaded.records.size();
  if (cfg.has_n_registry && cfg.n_registry != n) {
    throw Error(ErrorCode::kConfigMismatch,
                fmt::format("configured n_registry={} but store holds {}",
                            cfg.n_registry, n));
  }
  if (!explicit_out.empty() && count != 1) {
    throw Error(ErrorCode::kConfig, "--out requires a single round");
  }
  const GroupParams params = GroupParams::Create(n, cfg.g);
  const RegistryIndex index = RegistryIndex::Build(loaded.records);
  for (std::uint64_t r = first_round; r < first_round + count; ++r) {
    const GroupCountTable table =
        BuildGroupTable(index, RoundSeed::Derive(cfg.master_seed, r), params);
    const std::string path =
        explicit_out.empty()
            ? (fs::path(cfg.table_dir) / fmt::format("round_{:06d}.csv", r)).string()
            : explicit_out;
    auto f = OpenOut(path);
    WriteGroupTable(f, table);
    out << fmt::format("round={} retained_groups={} file={}\n", r,
                       table.groups.size(), path);
  }
}

// ---- platform side -------------------------------------------------------

void PlatformPrepare(const ProtocolConfig& cfg, std::ostream& out) {
  const auto loaded = LoadPlatform(cfg.platform_csv);
  auto f = OpenOut(cfg.platform_store);
  WritePlatformCsv(f, loaded.records);
  WriteDropStats(out, loaded.stats);
}

void PlatformIngest(const ProtocolConfig& cfg,
                    const std::vector<std::string>& table_files,
                    std::ostream& out) {
  const Aggregates agg = ResolveAggregates(cfg);
  const GroupParams expected = GroupParams::Create(agg.n_registry, cfg.g);
  const auto platform = LoadPlatform(cfg.platform_store);
  const PlatformIndex index = PlatformIndex::Build(platform.records);
  const std::vector<std::string> users = UserIds(platform.records);

  const bool fresh = !fs::exists(cfg.draw_store);
  DrawStore store = LoadDrawStore(cfg.draw_store);
  if (fresh) {
    auto f = OpenOut(cfg.draw_store);
    f << "user_id,round_index,y\n";
  }
  for (const std::string& path : table_files) {
    auto in = OpenIn(path);
    const GroupCountTable table = ReadGroupTable(in);
    const RoundSeed seed = RoundSeed::Derive(cfg.master_seed, table.round_index);
    const std::vector<UserDraw> draws = AssignDraws(index, table, seed, expected);
    store.Accumulate(draws, table.round_index);
    auto f = OpenOut(cfg.draw_store, std::ios::app);
    DrawStore::AppendRoundCsv(f, draws, table.round_index);
    out << fmt::format("round={} draws={} coverage={:.4f}\n", table.round_index,
                       draws.size(),
                       users.empty() ? 0.0
                                     : static_cast<double>(draws.size()) /
                                           static_cast<double>(users.size()));
  }
  if (const auto plan = ResolvePlan(cfg, agg.turnout_p, false, out)) {
    out << fmt::format(
        "rounds={} below_m1={} estimated_rounds_to_m1={}\n",
        store.rounds().size(), CountBelowQuota(store, plan->m1, users),
        PlanRoundsEmpirical(store, plan->m1, users, cfg.g));
  }
}

void ClassifyCmd(const ProtocolConfig& cfg, std::ostream& out) {
  const Aggregates agg = ResolveAggregates(cfg);
  const RoundPlan plan = *ResolvePlan(cfg, agg.turnout_p, true, out);
  const auto platform = LoadPlatform(cfg.platform_store);
  const DrawStore store = LoadDrawStore(cfg.draw_store);
  const std::vector<std::string> users = UserIds(platform.records);
  const PopulationParams params{agg.turnout_p, static_cast<int>(cfg.g), 1.0};
  const auto results = TwoStageClassify(store, users, plan, params);
  {
    auto f = OpenOut(cfg.classification_out);
    WriteClassificationCsv(f, results);
  }
  std::array<std::size_t, 3> counts{};
  for (const auto& [id, r] : results) ++counts[LabelIndex(r.label)];
  out << fmt::format("m1={} m2={} abstainer={} voter={} unmatched={}\n",
                     plan.m1, plan.m2, counts[0], counts[1], counts[2]);
}

void CalibrateCmd(const ProtocolConfig& cfg, std::ostream& out) {
  const Aggregates agg = ResolveAggregates(cfg);
  const SimulationConfig sim = MakeSimulationConfig(cfg, agg.turnout_p);
  const CalibrationPlan plan = Calibrate(sim);
  {
    auto f = OpenOut(cfg.calibration_out);
    WriteCalibrationReport(f, sim, plan);
  }
  std::vector<int> ms;
  for (int m = sim.grid_step; m <= plan.m1 + plan.m2 || m <= plan.m1; m += sim.grid_step) {
    ms.push_back(m);
  }
  const auto curve = AccuracyCurve(sim, ms);
  {
    auto f = OpenOut(cfg.curve_out);
    WriteCurveCsv(f, curve);
  }
  WriteCalibrationReport(out, sim, plan);
}

void SimulateCmd(const ProtocolConfig& cfg, const std::vector<int>& m_values,
                 std::ostream& out) {
  const Aggregates agg = ResolveAggregates(cfg);
  const SimulationConfig sim = MakeSimulationConfig(cfg, agg.turnout_p);
  const auto curve = AccuracyCurve(sim, m_values);
  auto f = OpenOut(cfg.curve_out);
  WriteCurveCsv(f, curve);
  WriteCurveCsv(out, curve);
}

void ValidateCmd(const ProtocolConfig& cfg, bool turnout, std::ostream& out) {
  std::map<std::string, ClassificationResult> results;
  {
    auto in = OpenIn(cfg.classification_out);
    results = ReadClassificationCsv(in);
  }
  std::map<std::string, ClassLabel> truth;
  {
    auto in = OpenIn(cfg.truth_csv);
    truth = ReadTruthCsv(in);
  }
  // Evaluate only users with a truth label; sampling is the caller's job.
  std::map<std::string, ClassificationResult> evaluated;
  for (const auto& [id, r] : results) {
    if (truth.contains(id)) evaluated.emplace(id, r);
  }
  if (evaluated.empty()) {
    throw Error(ErrorCode::kMissingTruth, "no classified user has a truth label");
  }
  const TruthTable table = BuildTruthTable(evaluated, truth);
  {
    auto f = OpenOut(cfg.validation_prefix + "_truth_table.csv");
    WriteTruthTableCsv(f, table);
  }
  {
    auto f = OpenOut(cfg.validation_prefix + "_summary.csv");
    WriteSummaryCsv(f, table);
  }
  WriteSummaryCsv(out, table);
  if (turnout) {
    const auto platform = LoadPlatform(cfg.platform_store);
    std::map<std::string, std::string> keys;
    for (const PlatformRecord& r : platform.records) keys[r.user_id] = r.attribute;
    const auto rows = GroupedTurnoutReport(results, keys);
    auto f = OpenOut(cfg.validation_prefix + "_turnout.csv");
    WriteTurnoutCsv(f, rows);
  }
}

void EstimateMatchRateCmd(const ProtocolConfig& cfg, std::ostream& out) {
  std::unordered_set<std::uint32_t> hashes;
  {
    auto in = OpenIn(cfg.estimation_hashes);
    std::string line;
    while (csv::NextLine(in, line)) {
      if (line.empty()) continue;
      try {
        hashes.insert(static_cast<std::uint32_t>(std::stoul(line)));
      } catch (const std::exception&) {
        throw Error(ErrorCode::kFileFormat, fmt::format("bad hash '{}'", line));
      }
    }
  }
  const auto platform = LoadPlatform(cfg.platform_store);
  const auto idx = SampleIndices(platform.records.size(), cfg.sample_size,
                                 cfg.master_seed);
  std::vector<CanonicalIdentity> sample;
  for (std::size_t i : idx) sample.push_back(platform.records[i].identity);
  const double rate = EstimateMatchRate(sample, hashes, EstimationSeed(cfg));
  out << fmt::format("sample_size={}\nmatch_rate={}\n", sample.size(), rate);
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kFileFormat: return kExitFileFormat;
    case ErrorCode::kParamsMismatch: return kExitParamsMismatch;
    case ErrorCode::kQuotaNotMet: return kExitQuotaNotMet;
    case ErrorCode::kTargetUnreachable: return kExitTargetUnreachable;
    case ErrorCode::kConfig:
    case ErrorCode::kConfigMismatch:
    case ErrorCode::kEmptyRegistry: return kExitConfig;
    case ErrorCode::kDuplicateRound: return kExitDuplicateRound;
    default: return kExitFailure;
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Anonymous group-level record linkage between a registry and a platform",
               "yahtzee"};
  app.set_config("--config", "", "Flat key=value config file");
  app.require_subcommand(1);
  app.fallthrough();

  ProtocolConfig cfg;
  app.add_option("--g", cfg.g, "Group size")->capture_default_str();
  app.add_option("--master_seed", cfg.master_seed, "Seed all round salts derive from");
  auto* n_opt = app.add_option("--n_registry", cfg.n_registry, "Deduplicated registry size N");
  auto* p_opt = app.add_option("--turnout_p", cfg.turnout_p, "Registry turnout p");
  app.add_option("--target_accuracy", cfg.target_accuracy)->capture_default_str();
  auto* m1_opt = app.add_option("--m1", cfg.m1, "Stage-1 draw quota")->check(CLI::PositiveNumber);
  auto* m2_opt = app.add_option("--m2", cfg.m2, "Stage-2 extra draws")->check(CLI::NonNegativeNumber);
  auto* mm_opt = app.add_option("--match_rate", cfg.match_rate, "Estimated match rate");
  app.add_option("--estimation_salt", cfg.estimation_salt,
                 "Match-rate estimation salt (derived from master_seed if empty)");
  app.add_option("--sim_n", cfg.sim_n)->capture_default_str();
  app.add_option("--sim_seed", cfg.sim_seed)->capture_default_str();
  app.add_option("--replicates", cfg.replicates)->capture_default_str();
  app.add_option("--grid_step", cfg.grid_step)->capture_default_str();
  app.add_option("--grid_cap", cfg.grid_cap)->capture_default_str();
  app.add_option("--sample_size", cfg.sample_size)->capture_default_str();

  const std::vector<std::pair<std::string, std::string*>> paths = {
      {"registry_csv", &cfg.registry_csv},
      {"registry_store", &cfg.registry_store},
      {"registry_summary", &cfg.registry_summary},
      {"estimation_hashes", &cfg.estimation_hashes},
      {"table_dir", &cfg.table_dir},
      {"platform_csv", &cfg.platform_csv},
      {"platform_store", &cfg.platform_store},
      {"draw_store", &cfg.draw_store},
      {"classification_out", &cfg.classification_out},
      {"calibration_out", &cfg.calibration_out},
      {"curve_out", &cfg.curve_out},
      {"truth_csv", &cfg.truth_csv},
      {"validation_prefix", &cfg.validation_prefix},
  };
  for (const auto& [name, target] : paths) {
    std::string env = "YAHTZEE_" + name;
    std::transform(env.begin(), env.end(), env.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    app.add_option("--" + name, *target)->envname(env)->capture_default_str();
  }

  auto* prep = app.add_subcommand("registry-prepare",
                                  "Deduplicate the registry and publish N, p and estimation hashes");
  std::uint64_t round = 0;
  std::uint64_t round_count = 1;
  std::string table_out;
  auto* reg_round = app.add_subcommand("registry-round", "Write the group count table for a round");
  reg_round->add_option("--round", round, "First round index")->required();
  reg_round->add_option("--count", round_count, "Number of consecutive rounds")
      ->check(CLI::PositiveNumber);
  reg_round->add_option("--out", table_out, "Output file (single round only)");

  auto* plat_prep = app.add_subcommand("platform-prepare", "Canonicalize and deduplicate platform records");
  std::vector<std::string> tables;
  auto* ingest = app.add_subcommand("platform-ingest-round", "Accumulate draws from group tables");
  ingest->add_option("--table", tables, "Group table file(s), in round order")->required();

  auto* classify = app.add_subcommand("classify", "Two-stage maximum-likelihood classification");
  auto* calibrate = app.add_subcommand("calibrate", "Search (m1, m2) by simulation");
  std::vector<int> m_values;
  for (int m = 5; m <= 100; m += 5) m_values.push_back(m);
  auto* simulate = app.add_subcommand("simulate", "Accuracy curve versus draws");
  simulate->add_option("--m_values", m_values, "Draw counts, ascending")->delimiter(',');
  bool turnout = false;
  auto* validate = app.add_subcommand("validate", "Truth table and null-accuracy intervals");
  validate->add_flag("--turnout", turnout, "Also report matched turnout by attribute");
  auto* estimate = app.add_subcommand("estimate-match-rate", "Estimate the match rate from a sample");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  cfg.has_n_registry = n_opt->count() > 0;
  cfg.has_turnout_p = p_opt->count() > 0;
  cfg.has_m1 = m1_opt->count() > 0;
  cfg.has_m2 = m2_opt->count() > 0;
  cfg.has_match_rate = mm_opt->count() > 0;

  try {
    if (prep->parsed()) RegistryPrepare(cfg, out);
    else if (reg_round->parsed()) RegistryRound(cfg, round, round_count, table_out, out);
    else if (plat_prep->parsed()) PlatformPrepare(cfg, out);
    else if (ingest->parsed()) PlatformIngest(cfg, tables, out);
    else if (classify->parsed()) ClassifyCmd(cfg, out);
    else if (calibrate->parsed()) CalibrateCmd(cfg, out);
    else if (simulate->parsed()) SimulateCmd(cfg, m_values, out);
    else if (validate->parsed()) ValidateCmd(cfg, turnout, out);
    else if (estimate->parsed()) EstimateMatchRateCmd(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace yahtzee::cli
