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

#include "mia/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace mia {

QuerySet build_query_set(const std::vector<LabeledSample>& train,
                         const std::vector<LabeledSample>& holdout, int n_each,
                         std::uint64_t seed,
                         std::optional<int> exclude_group) {
  require(n_each >= 1, ErrorCode::invalid_argument,
          "build_query_set: n_each must be >= 1");
  std::vector<std::size_t> eligible_holdout;
  for (std::size_t i = 0; i < holdout.size(); ++i) {
    if (exclude_group && holdout[i].group_id == *exclude_group) continue;
    eligible_holdout.push_back(i);
  }
  require(static_cast<std::size_t>(n_each) <= train.size() &&
              static_cast<std::size_t>(n_each) <= eligible_holdout.size(),
          ErrorCode::invalid_argument,
          "build_query_set: n_each exceeds an available pool");

  Rng rng(mix64(seed ^ 0x9e3779b9ULL));
  QuerySet qs;
  const auto train_perm = rng.permutation(train.size());
  for (int i = 0; i < n_each; ++i) {
    LabeledSample s = train[train_perm[i]];
    s.membership = true;
    qs.samples.push_back(std::move(s));
  }
  const auto holdout_perm = rng.permutation(eligible_holdout.size());
  for (int i = 0; i < n_each; ++i) {
    LabeledSample s = holdout[eligible_holdout[holdout_perm[i]]];
    s.membership = false;
    qs.samples.push_back(std::move(s));
  }
  const auto shuffle = rng.permutation(qs.samples.size());
  std::vector<LabeledSample> shuffled(qs.samples.size());
  for (std::size_t i = 0; i < shuffle.size(); ++i)
    shuffled[i] = std::move(qs.samples[shuffle[i]]);
  qs.samples = std::move(shuffled);
  qs.member_count = n_each;
  qs.non_member_count = n_each;
  return qs;
}

RocCurve auc_roc(const std::vector<double>& scores,
                 const std::vector<int>& labels, bool higher_is_member) {
  require(scores.size() == labels.size(), ErrorCode::dimension,
          "auc_roc: scores/labels size mismatch");
  require(!scores.empty(), ErrorCode::invalid_argument, "auc_roc: empty input");
  long long n_pos = 0, n_neg = 0;
  for (int l : labels) {
    require(l == 0 || l == 1, ErrorCode::invalid_argument,
            "auc_roc: labels must be 0/1");
    l == 1 ? ++n_pos : ++n_neg;
  }
  require(n_pos > 0 && n_neg > 0, ErrorCode::invalid_argument,
          "auc_roc: need at least one member and one non-member");
  for (double s : scores)
    check_finite(s, "auc_roc score");

  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double sa = higher_is_member ? scores[a] : -scores[a];
    const double sb = higher_is_member ? scores[b] : -scores[b];
    return sa < sb;
  });

  // Doubled average ranks stay integral, so the rank sum is exact.
  std::vector<long long> rank2(n, 0);
  auto key = [&](std::size_t i) {
    return higher_is_member ? scores[i] : -scores[i];
  };
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && key(order[j]) == key(order[i])) ++j;
    const long long r2 = static_cast<long long>(i) + static_cast<long long>(j) + 1;
    for (std::size_t k = i; k < j; ++k) rank2[order[k]] = r2;
    i = j;
  }
  long long u2 = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (labels[k] == 1) u2 += rank2[k];
  u2 -= n_pos * (n_pos + 1);
  RocCurve curve;
  curve.auc = static_cast<double>(u2) / static_cast<double>(2 * n_pos * n_neg);

  // Threshold sweep from the most member-like score down, ties grouped.
  curve.points.emplace_back(0.0, 0.0);
  long long tp = 0, fp = 0;
  std::size_t idx = n;
  while (idx > 0) {
    std::size_t j = idx;
    while (j > 0 && key(order[j - 1]) == key(order[idx - 1])) --j;
    for (std::size_t k = j; k < idx; ++k)
      labels[order[k]] == 1 ? ++tp : ++fp;
    curve.points.emplace_back(static_cast<double>(fp) / n_neg,
                              static_cast<double>(tp) / n_pos);
    idx = j;
  }
  return curve;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && v[order[j]] == v[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j + 1);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

}  // namespace

double spearman_rank_correlation(const std::vector<double>& a,
                                 const std::vector<double>& b) {
  require(a.size() == b.size() && a.size() >= 2, ErrorCode::invalid_argument,
          "spearman: need two same-length series");
  const std::vector<double> ra = average_ranks(a);
  const std::vector<double> rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  require(va > 0.0 && vb > 0.0, ErrorCode::invalid_argument,
          "spearman: constant series");
  return cov / std::sqrt(va * vb);
}

namespace {

VictimAccess full_access(const AnyModel& model, const SamplePool& pool) {
  VictimAccess access;
  access.latent_dim = model.latent_dim();
  access.pool = &pool;
  const MlpNetwork* gen = &model.generator();
  access.g_eval = [gen](const Vec& z) { return mlp_forward(*gen, z); };
  access.generator = gen;
  if (const MlpNetwork* disc = model.discriminator()) {
    access.disc_score = [disc](const Vec& x) {
      return mlp_forward(*disc, x)[0];
    };
  }
  return access;
}

const AnyModel* reference_for(const ReferenceModels& refs, AttackSetting s) {
  switch (s) {
    case AttackSetting::full_black_box:
    case AttackSetting::partial_black_box:
      return refs.black_box;
    case AttackSetting::white_box:
    case AttackSetting::accessible_discriminator:
      return refs.white_box;
  }
  return nullptr;
}

}  // namespace

SuiteResult run_attack_suite(const AnyModel& victim,
                             const ReferenceModels& references,
                             const QuerySet& queries,
                             const std::vector<AttackSetting>& settings,
                             const AttackSuiteConfig& cfg, int train_size) {
  require(!queries.samples.empty(), ErrorCode::invalid_argument,
          "run_attack_suite: empty query set");
  for (const LabeledSample& q : queries.samples)
    require(q.membership.has_value(), ErrorCode::invalid_argument,
            "run_attack_suite: query without membership label");
  require(cfg.weights.lambda2 == 0.0, ErrorCode::invalid_argument,
          "run_attack_suite: perceptual hooks are not wired into the suite");

  const int k = cfg.fbb_samples > 0 ? cfg.fbb_samples : std::max(train_size, 64);
  Rng pool_rng(mix64(cfg.seed ^ 0x706f6f6cULL));
  Rng victim_pool_rng = pool_rng.fork(1);
  const SamplePool victim_pool =
      draw_sample_pool(victim.generator(), k, victim_pool_rng);
  const VictimAccess victim_full = full_access(victim, victim_pool);

  // Reference pools are drawn lazily, one per distinct reference model.
  std::map<const AnyModel*, SamplePool> ref_pools;
  auto ref_pool = [&](const AnyModel* model) -> const SamplePool& {
    auto it = ref_pools.find(model);
    if (it == ref_pools.end()) {
      Rng r = pool_rng.fork(2 + ref_pools.size());
      it = ref_pools.emplace(model, draw_sample_pool(model->generator(), k, r))
               .first;
    }
    return it->second;
  };

  ReconSettings rs{cfg.weights, cfg.powell, cfg.lbfgs, cfg.form};

  SuiteResult result;
  for (AttackSetting setting : settings) {
    const AnyModel* ref_model = reference_for(references, setting);
    require(ref_model != nullptr, ErrorCode::capability,
            "run_attack_suite: no calibration reference for " +
                attack_setting_name(setting));
    const VictimAccess victim_access = restrict_access(victim_full, setting);
    const VictimAccess ref_access =
        restrict_access(full_access(*ref_model, ref_pool(ref_model)), setting);

    SettingOutcome outcome;
    std::vector<double> neg_raw, neg_cal;
    std::vector<int> labels;
    for (const LabeledSample& q : queries.samples) {
      const double raw = score_query(setting, victim_access, q.x, rs);
      const double ref = score_query(setting, ref_access, q.x, rs);
      AttackScore score;
      score.raw = raw;
      score.calibrated = calibrate(raw, ref);
      score.membership_prob = membership_prob(*score.calibrated);
      outcome.scores.push_back(score);
      neg_raw.push_back(-raw);
      neg_cal.push_back(-*score.calibrated);
      labels.push_back(*q.membership ? 1 : 0);
    }
    outcome.raw_curve = auc_roc(neg_raw, labels);
    outcome.cal_curve = auc_roc(neg_cal, labels);
    result.emplace(setting, std::move(outcome));
  }
  return result;
}

void CellConfig::validate() const {
  dataset.validate();
  require(train_size >= 1, ErrorCode::config, "cell: train_size must be >= 1");
  require(reference_size >= 1, ErrorCode::config,
          "cell: reference_size must be >= 1");
  require(n_each >= 1, ErrorCode::config, "cell: n_each must be >= 1");
  require(latent_dim >= 1, ErrorCode::config, "cell: latent_dim must be >= 1");
  require(!settings.empty(), ErrorCode::config, "cell: no attack settings");
  require(train_size + reference_size + n_each <= dataset.n_samples,
          ErrorCode::config,
          "cell: dataset too small for train + reference + queries");
}

PreparedCell prepare_cell(const CellConfig& cfg, bool train_victim,
                          bool train_references) {
  cfg.validate();
  const std::vector<LabeledSample> data = generate_dataset(cfg.dataset);

  // Reference shard: a seeded slice removed before the victim split, so it
  // never overlaps victim training data or query pools.
  Rng shard_rng(mix64(cfg.seed ^ 0x73686172ULL));
  const auto perm = shard_rng.permutation(data.size());
  PreparedCell cell;
  std::vector<LabeledSample> rest;
  rest.reserve(data.size() - cfg.reference_size);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i < static_cast<std::size_t>(cfg.reference_size))
      cell.reference_data.push_back(data[perm[i]].x);
    else
      rest.push_back(data[perm[i]]);
  }

  cell.split = split_train_holdout(rest, cfg.train_size, cfg.split_mode,
                                   mix64(cfg.seed ^ 0x73706c69ULL));

  if (train_victim) {
    std::vector<Vec> train_vecs;
    train_vecs.reserve(cell.split.train.size());
    for (const LabeledSample& s : cell.split.train) train_vecs.push_back(s.x);
    cell.victim = train_any(cfg.victim_variant, train_vecs, cfg.victim_train,
                            cfg.victim_arch, cfg.latent_dim);
  }

  if (train_references) {
    bool need_bb = false, need_wb = false;
    for (AttackSetting s : cfg.settings) {
      if (s == AttackSetting::full_black_box ||
          s == AttackSetting::partial_black_box)
        need_bb = true;
      else
        need_wb = true;
    }
    if (need_bb) {
      // Unrelated architecture, always a plain GAN: the attacker does not
      // know the victim family in the black-box settings.
      cell.reference_black_box =
          train_any(ModelVariant::gan, cell.reference_data,
                    cfg.reference_train, cfg.reference_arch, cfg.latent_dim);
    }
    if (need_wb) {
      cell.reference_white_box =
          train_any(cfg.victim_variant, cell.reference_data,
                    cfg.reference_train, cfg.victim_arch, cfg.latent_dim);
    }
  }
  return cell;
}

SuiteResult attack_prepared(const PreparedCell& cell, const CellConfig& cfg) {
  const QuerySet queries = build_query_set(
      cell.split.train, cell.split.holdout, cfg.n_each,
      mix64(cfg.seed ^ 0x71756572ULL), cell.split.straddling_group);
  AttackSuiteConfig suite = cfg.suite;
  suite.seed = mix64(cfg.seed ^ 0x61747461ULL);
  ReferenceModels refs;
  if (cell.reference_black_box) refs.black_box = &*cell.reference_black_box;
  if (cell.reference_white_box) refs.white_box = &*cell.reference_white_box;
  return run_attack_suite(cell.victim, refs, queries, cfg.settings, suite,
                          cfg.train_size);
}

CellResult run_cell(const CellConfig& cfg) {
  const PreparedCell cell = prepare_cell(cfg);
  CellResult result;
  result.train_size = cfg.train_size;
  result.split_mode = cfg.split_mode;
  result.dp_enabled = cfg.victim_train.dp.has_value();
  result.seed = cfg.seed;
  result.suite = attack_prepared(cell, cfg);
  return result;
}

std::vector<SweepCellPlan> plan_sweep(const CellConfig& base,
                                      const SweepAxes& axes) {
  require(!axes.sizes.empty(), ErrorCode::config, "sweep: no sizes");
  require(!axes.modes.empty(), ErrorCode::config, "sweep: no split modes");
  require(!axes.dp_arms.empty(), ErrorCode::config, "sweep: no dp arms");
  for (bool dp : axes.dp_arms)
    if (dp)
      require(axes.dp_config.has_value(), ErrorCode::config,
              "sweep: dp arm requested without dp config");

  std::vector<SweepCellPlan> plans;
  for (int size : axes.sizes) {
    for (SplitMode mode : axes.modes) {
      // Identical seeds across dp arms: only the aggregation differs.
      const std::uint64_t cell_seed =
          mix64(base.seed ^ (static_cast<std::uint64_t>(size) * 0x9e3779b9ULL) ^
                (mode == SplitMode::group_based ? 0x67726f75ULL : 0ULL));
      for (bool dp : axes.dp_arms) {
        SweepCellPlan plan;
        plan.size = size;
        plan.mode = mode;
        plan.dp_enabled = dp;
        plan.config = base;
        plan.config.train_size = size;
        plan.config.split_mode = mode;
        plan.config.seed = cell_seed;
        plan.config.victim_train.seed = mix64(cell_seed ^ 0x76696374ULL);
        plan.config.reference_train.seed = mix64(cell_seed ^ 0x72656665ULL);
        plan.config.victim_train.dp =
            dp ? std::optional<DpConfig>(*axes.dp_config) : std::nullopt;
        plan.id = "size" + std::to_string(size) + "_" + split_mode_name(mode) +
                  (dp ? "_dp" : "_nodp");
        plans.push_back(std::move(plan));
      }
    }
  }
  return plans;
}

SweepCellOutcome summarize_cell(const SweepCellPlan& plan,
                                const CellResult& result) {
  SweepCellOutcome out;
  out.id = plan.id;
  out.size = plan.size;
  out.mode = plan.mode;
  out.dp_enabled = plan.dp_enabled;
  out.seed = plan.config.seed;
  for (const auto& [setting, outcome] : result.suite)
    out.auc[setting] = {outcome.raw_curve.auc, outcome.cal_curve.auc};
  return out;
}

namespace {

SweepResult run_plans(const std::vector<SweepCellPlan>& plans, int jobs) {
  std::vector<SweepCellOutcome> outcomes(plans.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < plans.size(); ++i)
      outcomes[i] = summarize_cell(plans[i], run_cell(plans[i].config));
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= plans.size()) return;
        outcomes[i] = summarize_cell(plans[i], run_cell(plans[i].config));
      }
    };
    std::vector<std::thread> pool;
    const int n_threads = std::min<int>(jobs, static_cast<int>(plans.size()));
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  SweepResult result;
  result.cells = std::move(outcomes);
  return result;
}

}  // namespace

SweepResult sweep_training_size(const CellConfig& base,
                                const std::vector<int>& sizes, int jobs) {
  SweepAxes axes;
  axes.sizes = sizes;
  return run_plans(plan_sweep(base, axes), jobs);
}

std::pair<SweepResult, SweepResult> defense_comparison(
    const CellConfig& base, const std::vector<int>& sizes, const DpConfig& dp,
    int jobs) {
  SweepAxes axes;
  axes.sizes = sizes;
  axes.dp_arms = {false, true};
  axes.dp_config = dp;
  const SweepResult all = run_plans(plan_sweep(base, axes), jobs);
  SweepResult without, with;
  for (const SweepCellOutcome& cell : all.cells)
    (cell.dp_enabled ? with : without).cells.push_back(cell);
  return {without, with};
}

}  // namespace mia
