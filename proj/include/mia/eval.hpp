// Copyright 2026 The miagen Authors
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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mia/attack.hpp"
#include "mia/synthdata.hpp"

namespace mia {

struct QuerySet {
  std::vector<LabeledSample> samples;  // membership set on every sample
  int member_count = 0;
  int non_member_count = 0;
};

// Balanced query set: n_each members from train, n_each non-members from
// holdout, drawn without replacement and shuffled deterministically. Holdout
// members of `exclude_group` (a split's straddling group) are not eligible.
QuerySet build_query_set(const std::vector<LabeledSample>& train,
                         const std::vector<LabeledSample>& holdout, int n_each,
                         std::uint64_t seed,
                         std::optional<int> exclude_group = std::nullopt);

struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr), (0,0) .. (1,1)
  double auc = 0.5;
};

// Threshold sweep over the distinct scores. The AUC is the Mann-Whitney
// pairwise-ordering statistic with ties counted 1/2, computed in integer
// rank arithmetic: it is exact and depends only on score comparisons.
RocCurve auc_roc(const std::vector<double>& scores,
                 const std::vector<int>& labels, bool higher_is_member = true);

double spearman_rank_correlation(const std::vector<double>& a,
                                 const std::vector<double>& b);

struct AttackSuiteConfig {
  DistanceWeights weights;      // lambda2 stays 0 in the suite
  PowellConfig powell;
  LbfgsConfig lbfgs;
  L2Form form = L2Form::mean;
  int fbb_samples = 0;          // 0: same magnitude as the training set
  std::uint64_t seed = 1;
};

struct SettingOutcome {
  std::vector<AttackScore> scores;  // one per query, query order
  RocCurve raw_curve;
  RocCurve cal_curve;
};

using SuiteResult = std::map<AttackSetting, SettingOutcome>;

// Calibration references. Black-box settings calibrate against a model of
// unrelated architecture; white-box (and discriminator) settings against one
// matching the victim architecture.
struct ReferenceModels {
  const AnyModel* black_box = nullptr;
  const AnyModel* white_box = nullptr;
};

// Scores every query under each requested setting against the victim, then
// repeats the procedure against the reference for calibration, and emits
// raw and calibrated curves.
SuiteResult run_attack_suite(const AnyModel& victim,
                             const ReferenceModels& references,
                             const QuerySet& queries,
                             const std::vector<AttackSetting>& settings,
                             const AttackSuiteConfig& cfg, int train_size);

// One experiment cell: dataset generation, reference-shard carve-out,
// victim/reference training, query-set construction, attack suite.
struct CellConfig {
  DatasetSpec dataset;
  int train_size = 64;
  SplitMode split_mode = SplitMode::random;
  int reference_size = 256;
  int n_each = 32;
  ModelVariant victim_variant = ModelVariant::gan;
  ArchPreset victim_arch;
  TrainConfig victim_train;
  ArchPreset reference_arch;
  TrainConfig reference_train;
  int latent_dim = 8;
  std::vector<AttackSetting> settings;
  AttackSuiteConfig suite;
  std::uint64_t seed = 1;  // drives split/query/pool sub-seeds

  void validate() const;
};

struct CellResult {
  int train_size = 0;
  SplitMode split_mode = SplitMode::random;
  bool dp_enabled = false;
  std::uint64_t seed = 0;
  SuiteResult suite;
};

CellResult run_cell(const CellConfig& cfg);

// Same carve-out/training as run_cell but stopping before the attack;
// exposed so trained models can be persisted and attacked later.
struct PreparedCell {
  Split split;
  std::vector<Vec> reference_data;
  AnyModel victim;
  std::optional<AnyModel> reference_black_box;
  std::optional<AnyModel> reference_white_box;
};

PreparedCell prepare_cell(const CellConfig& cfg, bool train_victim = true,
                          bool train_references = true);

SuiteResult attack_prepared(const PreparedCell& cell, const CellConfig& cfg);

// Sweep = list of cells derived from a base config: per (size, mode, dp arm)
// the cell seed, victim seed, and split seeds are derived deterministically,
// so any cell can be replayed from its recorded config alone.
struct SweepAxes {
  std::vector<int> sizes;
  std::vector<SplitMode> modes = {SplitMode::random};
  std::vector<bool> dp_arms = {false};  // true arms use dp_config
  std::optional<DpConfig> dp_config;
};

struct SweepCellPlan {
  std::string id;
  CellConfig config;
  int size;
  SplitMode mode;
  bool dp_enabled;
};

std::vector<SweepCellPlan> plan_sweep(const CellConfig& base,
                                      const SweepAxes& axes);

struct SweepCellOutcome {
  std::string id;
  int size = 0;
  SplitMode mode = SplitMode::random;
  bool dp_enabled = false;
  std::uint64_t seed = 0;
  // setting -> (auc_raw, auc_calibrated)
  std::map<AttackSetting, std::pair<double, double>> auc;
};

struct SweepResult {
  std::vector<SweepCellOutcome> cells;
};

SweepCellOutcome summarize_cell(const SweepCellPlan& plan,
                                const CellResult& result);

// Runs every planned cell, optionally on `jobs` worker threads. Cells are
// independent; outputs are keyed by cell id, so the result does not depend
// on scheduling.
SweepResult sweep_training_size(const CellConfig& base,
                                const std::vector<int>& sizes, int jobs = 1);

// Paired arms with identical seeds and data; only gradient aggregation
// differs. Returns (without DP, with DP).
std::pair<SweepResult, SweepResult> defense_comparison(
    const CellConfig& base, const std::vector<int>& sizes, const DpConfig& dp,
    int jobs = 1);

}  // namespace mia
