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
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mia/mlp.hpp"
#include "mia/rng.hpp"

namespace mia {

enum class GanVariant { standard, wasserstein_clipped };

struct GanModel {
  MlpNetwork generator;
  MlpNetwork discriminator;
  int latent_dim = 0;
  GanVariant variant = GanVariant::standard;

  void validate() const;
};

struct VaeModel {
  MlpNetwork encoder;   // outputs mean ++ log-variance (2 * latent_dim)
  MlpNetwork decoder;
  int latent_dim = 0;

  void validate() const;
};

// Decoder and generator are one network referenced by both roles.
struct VaeganModel {
  MlpNetwork encoder;
  MlpNetwork decoder_generator;
  MlpNetwork discriminator;
  int latent_dim = 0;
  double recon_weight = 1.0;

  void validate() const;
};

struct DpConfig {
  double clip_norm = 1.0;
  double noise_scale = 1e-4;

  void validate() const;
};

struct TrainConfig {
  int iterations = 2000;
  int batch_size = 32;
  double lr = 1e-3;
  int disc_steps_per_gen_step = 1;
  std::optional<double> weight_clip;  // wasserstein variant
  std::optional<DpConfig> dp;
  std::uint64_t seed = 1;
  int log_interval = 100;
  double adam_beta1 = 0.5;
  double adam_beta2 = 0.999;
  double vaegan_adv_weight = 1.0;

  void validate(std::size_t dataset_size) const;
};

// Fully-connected architecture family: hidden_layers equal-width hidden
// layers plus the output layer.
struct ArchPreset {
  std::string name = "default";
  int hidden_width = 64;
  int hidden_layers = 4;
  Activation gen_hidden = Activation::relu;
  Activation gen_output = Activation::identity;
  Activation disc_hidden = Activation::leaky_relu;
  double leaky_slope = 0.2;
};

// Named presets: "default" (64x4), "reference" (96x2, deliberately unlike
// the default for black-box calibration), "tiny" (32x2, for fast tests).
ArchPreset arch_preset(const std::string& name);

std::vector<LayerSpec> generator_specs(const ArchPreset& arch, int latent_dim,
                                       int data_dim);
std::vector<LayerSpec> discriminator_specs(const ArchPreset& arch,
                                           int data_dim);
std::vector<LayerSpec> encoder_specs(const ArchPreset& arch, int data_dim,
                                     int latent_dim);

struct TrainLogEntry {
  int iteration = 0;
  double disc_loss = 0.0;
  double gen_loss = 0.0;
  double elbo = 0.0;
  double recon = 0.0;
};

struct TrainLog {
  std::vector<TrainLogEntry> entries;
};

GanModel gan_train(const std::vector<Vec>& data, const TrainConfig& cfg,
                   const ArchPreset& arch, int latent_dim,
                   GanVariant variant = GanVariant::standard,
                   TrainLog* log = nullptr);

VaeModel vae_train(const std::vector<Vec>& data, const TrainConfig& cfg,
                   const ArchPreset& arch, int latent_dim,
                   TrainLog* log = nullptr);

VaeganModel vaegan_train(const std::vector<Vec>& data, const TrainConfig& cfg,
                         const ArchPreset& arch, int latent_dim,
                         double recon_weight = 1.0, TrainLog* log = nullptr);

// No-op DP settings: infinite clip threshold, zero noise. Training always
// funnels gradients through dp_sgd_aggregate, so a run with these values is
// bit-identical to a run without DP.
inline DpConfig dp_disabled() {
  return DpConfig{std::numeric_limits<double>::infinity(), 0.0};
}

// Mean over per-sample gradients clipped to L2 norm <= clip_norm, with
// N(0, (noise_scale * clip_norm)^2) noise added to the sum before dividing
// by the batch size. Draws from `rng` only when noise_scale > 0.
Vec dp_sgd_aggregate(const std::vector<Vec>& per_sample_grads,
                     const DpConfig& dp, Rng& rng);

// Raw pre-threshold discriminator output (logit for the standard variant,
// critic value for the wasserstein variant).
double discriminator_score(const GanModel& model, const Vec& x);
double discriminator_score(const VaeganModel& model, const Vec& x);

// KL(N(mu, diag exp(logvar)) || N(0, I)), closed form.
double vae_kl(const Vec& mu, const Vec& logvar);

// One-sample ELBO pieces with an explicit reparameterization draw, so the
// same path serves training and finite-difference checks.
struct VaeLossParts {
  double loss = 0.0;   // recon_weight * recon + kl
  double recon = 0.0;  // squared error, summed over coordinates
  double kl = 0.0;
  MlpGradients encoder_grads;
  MlpGradients decoder_grads;
};

VaeLossParts vae_loss_and_grads(const MlpNetwork& encoder,
                                const MlpNetwork& decoder, const Vec& x,
                                const Vec& eps, double recon_weight = 1.0);

enum class ModelVariant { gan, wgan, vae, vaegan };

std::string model_variant_name(ModelVariant v);
ModelVariant model_variant_from_name(const std::string& name);

// Tagged union of the trained model families with a uniform view of the
// sampling-relevant pieces.
struct AnyModel {
  ModelVariant variant = ModelVariant::gan;
  std::optional<GanModel> gan;
  std::optional<VaeModel> vae;
  std::optional<VaeganModel> vaegan;

  int latent_dim() const;
  const MlpNetwork& generator() const;
  const MlpNetwork* discriminator() const;  // null when the family has none
  void validate() const;
};

AnyModel train_any(ModelVariant variant, const std::vector<Vec>& data,
                   const TrainConfig& cfg, const ArchPreset& arch,
                   int latent_dim, TrainLog* log = nullptr);

// Per-network JSON files inside `dir` (generator.json, discriminator.json,
// encoder.json as applicable).
void save_model_networks(const AnyModel& model, const std::string& dir);
AnyModel load_model_networks(ModelVariant variant, int latent_dim,
                             const std::string& dir);

}  // namespace mia
