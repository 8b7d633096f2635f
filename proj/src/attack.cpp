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

#include "mia/attack.hpp"

#include <algorithm>
#include <cmath>

namespace mia {

std::string attack_setting_name(AttackSetting s) {
  switch (s) {
    case AttackSetting::full_black_box: return "full_black_box";
    case AttackSetting::partial_black_box: return "partial_black_box";
    case AttackSetting::white_box: return "white_box";
    case AttackSetting::accessible_discriminator:
      return "accessible_discriminator";
  }
  fail(ErrorCode::internal, "unknown attack setting");
}

AttackSetting attack_setting_from_name(const std::string& name) {
  if (name == "full_black_box") return AttackSetting::full_black_box;
  if (name == "partial_black_box") return AttackSetting::partial_black_box;
  if (name == "white_box") return AttackSetting::white_box;
  if (name == "accessible_discriminator")
    return AttackSetting::accessible_discriminator;
  fail(ErrorCode::config, "unknown attack setting: " + name);
}

SamplePool draw_sample_pool(const MlpNetwork& generator, int k, Rng& rng) {
  require(k >= 1, ErrorCode::invalid_argument, "sample pool needs k >= 1");
  SamplePool pool;
  pool.latents.reserve(k);
  pool.samples.reserve(k);
  const std::size_t latent = generator.input_dim();
  for (int i = 0; i < k; ++i) {
    Vec z = rng.normal_vec(latent);
    pool.samples.push_back(mlp_forward(generator, z));
    pool.latents.push_back(std::move(z));
  }
  return pool;
}

namespace {

DistanceWeights without_reg(const DistanceWeights& w) {
  DistanceWeights out = w;
  out.lambda3 = 0.0;
  return out;
}

}  // namespace

double parzen_density(const Vec& x, const std::vector<Vec>& generated,
                      const DistanceWeights& w, const PerceptualHook& hook,
                      L2Form form) {
  require(!generated.empty(), ErrorCode::invalid_argument,
          "parzen_density: empty sample list");
  const DistanceWeights weights = without_reg(w);
  std::vector<double> distances;
  distances.reserve(generated.size());
  double min_dist = std::numeric_limits<double>::infinity();
  for (const Vec& s : generated) {
    const double d = full_distance(x, s, std::nullopt, weights, hook, form);
    distances.push_back(d);
    min_dist = std::min(min_dist, d);
  }
  // Factored around the largest (nearest-neighbor) term: every summand is
  // <= 1, so the result cannot exceed exp(-min_dist).
  double acc = 0.0;
  for (double d : distances) acc += std::exp(-(d - min_dist));
  return std::exp(-min_dist) * (acc / static_cast<double>(distances.size()));
}

ReconstructionResult fbb_reconstruct(const Vec& x,
                                     const std::vector<Vec>& generated,
                                     const DistanceWeights& w,
                                     const PerceptualHook& hook, L2Form form) {
  require(!generated.empty(), ErrorCode::invalid_argument,
          "fbb_reconstruct: empty sample list");
  const DistanceWeights weights = without_reg(w);
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < generated.size(); ++i) {
    const double d =
        full_distance(x, generated[i], std::nullopt, weights, hook, form);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  ReconstructionResult res;
  res.x_hat = generated[best];
  res.distance = best_dist;
  res.iterations = static_cast<int>(generated.size());
  res.converged = true;
  return res;
}

ReconstructionResult pbb_reconstruct(const Vec& x, const GeneratorOracle& g_eval,
                                     int latent_dim, const DistanceWeights& w,
                                     const PowellConfig& cfg, const Vec& z0,
                                     const PerceptualHook& hook, L2Form form) {
  require(static_cast<bool>(g_eval), ErrorCode::capability,
          "pbb_reconstruct: no generator oracle");
  require(z0.size() == static_cast<std::size_t>(latent_dim),
          ErrorCode::dimension, "pbb_reconstruct: init size != latent_dim");
  const Objective objective = [&](const Vec& z) {
    return full_distance(x, g_eval(z), z, w, hook, form);
  };
  OptimizationTrace trace = powell_minimize(objective, z0, cfg);
  ReconstructionResult res;
  res.z_star = trace.final_point;
  res.x_hat = g_eval(trace.final_point);
  res.distance = trace.final_value;
  res.iterations = trace.iterates.back().first;
  res.converged = trace.converged;
  return res;
}

ReconstructionResult wb_reconstruct(const Vec& x, const MlpNetwork& generator,
                                    const DistanceWeights& w,
                                    const LbfgsConfig& cfg, const Vec& z0,
                                    L2Form form) {
  require(w.lambda2 == 0.0, ErrorCode::invalid_argument,
          "wb_reconstruct: perceptual term is not differentiable; "
          "use the partial black-box path");
  require(z0.size() == generator.input_dim(), ErrorCode::dimension,
          "wb_reconstruct: init size != generator input dim");
  const Objective objective = [&](const Vec& z) {
    return full_distance_at_z(x, generator, z, w, nullptr, form);
  };
  const GradientFn gradient = [&](const Vec& z) {
    return full_distance_gradient_wrt_z(x, generator, z, w, form);
  };
  OptimizationTrace trace = lbfgs_minimize(objective, gradient, z0, cfg);
  ReconstructionResult res;
  res.z_star = trace.final_point;
  res.x_hat = mlp_forward(generator, trace.final_point);
  res.distance = trace.final_value;
  res.iterations = trace.iterates.back().first;
  res.converged = trace.converged;
  return res;
}

Vec init_select(const Vec& x, const SamplePool& pool, int latent_dim,
                InitStrategy strategy, Rng& rng, int nn_draws) {
  switch (strategy) {
    case InitStrategy::mean:
      return Vec(latent_dim, 0.0);
    case InitStrategy::random:
      return rng.normal_vec(latent_dim);
    case InitStrategy::nearest_neighbor: {
      require(!pool.samples.empty() && pool.latents.size() == pool.samples.size(),
              ErrorCode::capability,
              "init_select: nearest_neighbor needs a latent/sample pool");
      std::size_t limit = pool.samples.size();
      if (nn_draws > 0)
        limit = std::min(limit, static_cast<std::size_t>(nn_draws));
      std::size_t best = 0;
      double best_dist = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < limit; ++i) {
        const double d = l2_term(pool.samples[i], x, L2Form::mean);
        if (d < best_dist) {
          best_dist = d;
          best = i;
        }
      }
      return pool.latents[best];
    }
  }
  fail(ErrorCode::internal, "unknown init strategy");
}

ReconstructionResult dual_init_best(
    const Vec& mean_init, const Vec& nn_init,
    const std::function<ReconstructionResult(const Vec&)>& run) {
  ReconstructionResult a = run(mean_init);
  ReconstructionResult b = run(nn_init);
  return a.distance <= b.distance ? a : b;
}

double calibrate(double l_victim, double l_reference) {
  return l_victim - l_reference;
}

double membership_prob(double l_cal) {
  require(std::isfinite(l_cal), ErrorCode::invalid_argument,
          "membership_prob: non-finite input");
  if (l_cal >= 0.0) {
    const double e = std::exp(-l_cal);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(l_cal));
}

Decision attack_decision(double l_cal, double epsilon) {
  return l_cal < epsilon ? Decision::member : Decision::non_member;
}

double mc_nearest_distance(const Vec& x, const std::vector<Vec>& generated) {
  require(!generated.empty(), ErrorCode::invalid_argument,
          "mc_nearest_distance: empty sample list");
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& s : generated) best = std::min(best, norm(sub(x, s)));
  return best;
}

double mc_median_epsilon(const std::vector<Vec>& queries,
                         const std::vector<Vec>& generated) {
  require(!queries.empty(), ErrorCode::invalid_argument,
          "mc_median_epsilon: empty query list");
  std::vector<double> nn(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i)
    nn[i] = mc_nearest_distance(queries[i], generated);
  std::sort(nn.begin(), nn.end());
  const std::size_t n = nn.size();
  return n % 2 == 1 ? nn[n / 2] : 0.5 * (nn[n / 2 - 1] + nn[n / 2]);
}

double baseline_mc_score(const Vec& x, const std::vector<Vec>& generated,
                         double epsilon_ball) {
  require(!generated.empty(), ErrorCode::invalid_argument,
          "baseline_mc_score: empty sample list");
  std::size_t inside = 0;
  for (const Vec& s : generated)
    if (norm(sub(x, s)) < epsilon_ball) ++inside;
  return static_cast<double>(inside) / static_cast<double>(generated.size());
}

std::vector<double> baseline_mc_scores(const std::vector<Vec>& queries,
                                       const std::vector<Vec>& generated,
                                       std::optional<double> epsilon_ball) {
  const double eps = epsilon_ball.has_value()
                         ? *epsilon_ball
                         : mc_median_epsilon(queries, generated);
  std::vector<double> out(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i)
    out[i] = baseline_mc_score(queries[i], generated, eps);
  return out;
}

double baseline_logan_disc(const std::function<double(const Vec&)>& disc_score,
                           const Vec& x) {
  require(static_cast<bool>(disc_score), ErrorCode::capability,
          "baseline_logan_disc: no discriminator access");
  return disc_score(x);
}

GanModel baseline_logan_shadow(const std::vector<Vec>& generated,
                               const TrainConfig& shadow_cfg,
                               const ArchPreset& arch, int latent_dim) {
  require(generated.size() >= static_cast<std::size_t>(shadow_cfg.batch_size),
          ErrorCode::invalid_argument,
          "baseline_logan_shadow: not enough samples to train on");
  return gan_train(generated, shadow_cfg, arch, latent_dim,
                   GanVariant::standard);
}

VictimAccess restrict_access(const VictimAccess& full, AttackSetting setting) {
  VictimAccess out;
  out.latent_dim = full.latent_dim;
  switch (setting) {
    case AttackSetting::full_black_box:
      out.pool = full.pool;
      break;
    case AttackSetting::partial_black_box:
      out.pool = full.pool;
      out.g_eval = full.g_eval;
      break;
    case AttackSetting::white_box:
      out.pool = full.pool;
      out.g_eval = full.g_eval;
      out.generator = full.generator;
      break;
    case AttackSetting::accessible_discriminator:
      out.pool = full.pool;
      out.g_eval = full.g_eval;
      out.generator = full.generator;
      out.disc_score = full.disc_score;
      break;
  }
  return out;
}

ReconstructionResult reconstruct_query(AttackSetting setting,
                                       const VictimAccess& access, const Vec& x,
                                       const ReconSettings& rs) {
  switch (setting) {
    case AttackSetting::full_black_box: {
      require(access.pool && !access.pool->samples.empty(),
              ErrorCode::capability,
              "full_black_box: no generated sample pool");
      return fbb_reconstruct(x, access.pool->samples, rs.weights, nullptr,
                             rs.form);
    }
    case AttackSetting::partial_black_box: {
      require(static_cast<bool>(access.g_eval), ErrorCode::capability,
              "partial_black_box: no latent-input access");
      require(access.pool && !access.pool->latents.empty(),
              ErrorCode::capability,
              "partial_black_box: no latent/sample pool for init");
      Rng unused(0);
      const Vec mean_init =
          init_select(x, *access.pool, access.latent_dim, InitStrategy::mean,
                      unused);
      const Vec nn_init =
          init_select(x, *access.pool, access.latent_dim,
                      InitStrategy::nearest_neighbor, unused);
      return dual_init_best(mean_init, nn_init, [&](const Vec& z0) {
        return pbb_reconstruct(x, access.g_eval, access.latent_dim, rs.weights,
                               rs.powell, z0, nullptr, rs.form);
      });
    }
    case AttackSetting::white_box: {
      require(access.generator != nullptr, ErrorCode::capability,
              "white_box: no generator internals");
      require(access.pool && !access.pool->latents.empty(),
              ErrorCode::capability, "white_box: no latent/sample pool for init");
      Rng unused(0);
      const Vec mean_init =
          init_select(x, *access.pool, access.latent_dim, InitStrategy::mean,
                      unused);
      const Vec nn_init =
          init_select(x, *access.pool, access.latent_dim,
                      InitStrategy::nearest_neighbor, unused);
      return dual_init_best(mean_init, nn_init, [&](const Vec& z0) {
        return wb_reconstruct(x, *access.generator, rs.weights, rs.lbfgs, z0,
                              rs.form);
      });
    }
    case AttackSetting::accessible_discriminator:
      fail(ErrorCode::invalid_argument,
           "accessible_discriminator scores queries without reconstruction");
  }
  fail(ErrorCode::internal, "unknown attack setting");
}

double score_query(AttackSetting setting, const VictimAccess& access,
                   const Vec& x, const ReconSettings& rs) {
  if (setting == AttackSetting::accessible_discriminator) {
    require(static_cast<bool>(access.disc_score), ErrorCode::capability,
            "accessible_discriminator: no discriminator access");
    // Negated so that, like a reconstruction distance, smaller means member.
    return -baseline_logan_disc(access.disc_score, x);
  }
  return reconstruct_query(setting, access, x, rs).distance;
}

}  // namespace mia
