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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mia/distance.hpp"
#include "mia/models.hpp"
#include "mia/optim.hpp"

namespace mia {

// Attack taxonomy, ordered by decreasing attacker knowledge restrictions:
// sample access only; latent-input access; generator internals; and the
// (usually discarded) discriminator.
enum class AttackSetting {
  full_black_box,
  partial_black_box,
  white_box,
  accessible_discriminator,
};

std::string attack_setting_name(AttackSetting s);
AttackSetting attack_setting_from_name(const std::string& name);

struct ReconstructionResult {
  std::optional<Vec> z_star;
  Vec x_hat;
  double distance = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct AttackScore {
  double raw = 0.0;
  std::optional<double> calibrated;
  std::optional<double> membership_prob;  // sigmoid(-calibrated)
};

using GeneratorOracle = std::function<Vec(const Vec&)>;

// Latent/sample pairs drawn from a generator's prior. Samples double as the
// full-black-box candidate set and the nearest-neighbor init candidates.
struct SamplePool {
  std::vector<Vec> latents;
  std::vector<Vec> samples;
};

SamplePool draw_sample_pool(const MlpNetwork& generator, int k, Rng& rng);

// Density surrogate (1/k) * sum_i exp(-L(x, sample_i)). The latent
// regularizer weight is forced to zero: prior samples satisfy the
// constraint by construction. Evaluated in factored form around the
// nearest-neighbor term, so the value never exceeds exp(-min distance).
double parzen_density(const Vec& x, const std::vector<Vec>& generated,
                      const DistanceWeights& w,
                      const PerceptualHook& hook = nullptr,
                      L2Form form = L2Form::mean);

// Nearest neighbor among the generated samples (lambda3 forced to zero).
ReconstructionResult fbb_reconstruct(const Vec& x,
                                     const std::vector<Vec>& generated,
                                     const DistanceWeights& w,
                                     const PerceptualHook& hook = nullptr,
                                     L2Form form = L2Form::mean);

// Derivative-free latent-code optimization against an opaque z -> sample
// oracle.
ReconstructionResult pbb_reconstruct(const Vec& x, const GeneratorOracle& g_eval,
                                     int latent_dim, const DistanceWeights& w,
                                     const PowellConfig& cfg, const Vec& z0,
                                     const PerceptualHook& hook = nullptr,
                                     L2Form form = L2Form::mean);

// Gradient-based latent-code optimization on generator internals. Requires
// lambda2 == 0 (the perceptual hook has no gradient).
ReconstructionResult wb_reconstruct(const Vec& x, const MlpNetwork& generator,
                                    const DistanceWeights& w,
                                    const LbfgsConfig& cfg, const Vec& z0,
                                    L2Form form = L2Form::mean);

enum class InitStrategy { mean, random, nearest_neighbor };

// mean: the prior mean (zero vector). random: a prior draw. nearest_neighbor:
// the pool latent whose sample is closest to x in L2 (first `nn_draws`
// entries; 0 means the whole pool).
Vec init_select(const Vec& x, const SamplePool& pool, int latent_dim,
                InitStrategy strategy, Rng& rng, int nn_draws = 0);

// Runs the reconstruction from both the mean and nearest-neighbor inits and
// keeps the smaller-distance result.
ReconstructionResult dual_init_best(
    const Vec& mean_init, const Vec& nn_init,
    const std::function<ReconstructionResult(const Vec&)>& run);

// l_victim - l_reference
double calibrate(double l_victim, double l_reference);

// sigmoid(-l_cal), computed overflow-safe; strictly decreasing.
double membership_prob(double l_cal);

enum class Decision { member, non_member };

// member iff l_cal < epsilon (ties are non_member).
Decision attack_decision(double l_cal, double epsilon);

// Fraction of generated samples within Euclidean distance < epsilon of x.
double baseline_mc_score(const Vec& x, const std::vector<Vec>& generated,
                         double epsilon_ball);
// Batch form; when epsilon_ball is absent it is set by the median heuristic:
// the median over queries of the distance to their nearest generated sample
// (first pass), then scoring (second pass).
std::vector<double> baseline_mc_scores(const std::vector<Vec>& queries,
                                       const std::vector<Vec>& generated,
                                       std::optional<double> epsilon_ball);
double mc_nearest_distance(const Vec& x, const std::vector<Vec>& generated);
double mc_median_epsilon(const std::vector<Vec>& queries,
                         const std::vector<Vec>& generated);

// The discriminator score is the membership score (higher = member).
double baseline_logan_disc(const std::function<double(const Vec&)>& disc_score,
                           const Vec& x);

// Retrains a fresh GAN on the victim's generated samples; its discriminator
// becomes the scorer.
GanModel baseline_logan_shadow(const std::vector<Vec>& generated,
                               const TrainConfig& shadow_cfg,
                               const ArchPreset& arch, int latent_dim);

// Capability handle for one victim. A setting only ever touches the fields
// its taxonomy row grants; score_query rejects anything missing.
struct VictimAccess {
  int latent_dim = 0;
  const SamplePool* pool = nullptr;
  GeneratorOracle g_eval;
  const MlpNetwork* generator = nullptr;
  std::function<double(const Vec&)> disc_score;
};

// Narrow a full handle down to exactly the capabilities of one setting.
VictimAccess restrict_access(const VictimAccess& full, AttackSetting setting);

struct ReconSettings {
  DistanceWeights weights;
  PowellConfig powell;
  LbfgsConfig lbfgs;
  L2Form form = L2Form::mean;
};

ReconstructionResult reconstruct_query(AttackSetting setting,
                                       const VictimAccess& access, const Vec& x,
                                       const ReconSettings& rs);

// Distance-like raw score: the reconstruction distance, or minus the
// discriminator score in the accessible_discriminator setting. Lower means
// more member-like everywhere.
double score_query(AttackSetting setting, const VictimAccess& access,
                   const Vec& x, const ReconSettings& rs);

}  // namespace mia
