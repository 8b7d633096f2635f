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

#include "mia/models.hpp"

#include <algorithm>
#include <cmath>

#include "mia/io_util.hpp"
#include "mia/optim.hpp"

namespace mia {

namespace {

constexpr double kDivergenceLimit = 1e6;

double softplus(double x) {
  // log(1 + e^x), overflow-safe
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) {
  return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                  : std::exp(x) / (1.0 + std::exp(x));
}

void check_data(const std::vector<Vec>& data) {
  require(!data.empty(), ErrorCode::invalid_argument, "training data is empty");
  const std::size_t dim = data.front().size();
  require(dim > 0, ErrorCode::invalid_argument, "training data dim is zero");
  for (const Vec& x : data)
    require(x.size() == dim, ErrorCode::dimension,
            "training data has non-uniform dimension");
}

void clip_parameters(MlpNetwork& net, double limit) {
  for (Layer& l : net.layers) {
    for (double& w : l.weight.data) w = std::clamp(w, -limit, limit);
    for (double& b : l.bias) b = std::clamp(b, -limit, limit);
  }
}

void check_divergence(double loss, const std::string& what) {
  if (!std::isfinite(loss) || std::abs(loss) > kDivergenceLimit)
    fail(ErrorCode::divergence,
         what + " diverged (loss = " + format_double(loss) + ")");
}

}  // namespace

void DpConfig::validate() const {
  require(clip_norm > 0.0, ErrorCode::config, "dp.clip_norm must be > 0");
  require(noise_scale >= 0.0, ErrorCode::config, "dp.noise_scale must be >= 0");
}

void TrainConfig::validate(std::size_t dataset_size) const {
  require(iterations >= 0, ErrorCode::config, "train.iterations must be >= 0");
  require(batch_size >= 1, ErrorCode::config, "train.batch_size must be >= 1");
  require(static_cast<std::size_t>(batch_size) <= dataset_size,
          ErrorCode::config, "train.batch_size exceeds the training set size");
  require(lr > 0.0, ErrorCode::config, "train.lr must be > 0");
  require(disc_steps_per_gen_step >= 1, ErrorCode::config,
          "train.disc_steps_per_gen_step must be >= 1");
  if (dp) dp->validate();
  if (weight_clip)
    require(*weight_clip > 0.0, ErrorCode::config,
            "train.weight_clip must be > 0");
}

void GanModel::validate() const {
  generator.validate();
  discriminator.validate();
  require(latent_dim > 0, ErrorCode::dimension, "gan: latent_dim must be > 0");
  require(generator.input_dim() == static_cast<std::size_t>(latent_dim),
          ErrorCode::dimension, "gan: generator input dim != latent_dim");
  require(discriminator.output_dim() == 1, ErrorCode::dimension,
          "gan: discriminator output dim != 1");
  require(generator.output_dim() == discriminator.input_dim(),
          ErrorCode::dimension, "gan: generator/discriminator dim mismatch");
}

void VaeModel::validate() const {
  encoder.validate();
  decoder.validate();
  require(latent_dim > 0, ErrorCode::dimension, "vae: latent_dim must be > 0");
  require(encoder.output_dim() == static_cast<std::size_t>(2 * latent_dim),
          ErrorCode::dimension, "vae: encoder must output 2 * latent_dim");
  require(decoder.input_dim() == static_cast<std::size_t>(latent_dim),
          ErrorCode::dimension, "vae: decoder input dim != latent_dim");
}

void VaeganModel::validate() const {
  encoder.validate();
  decoder_generator.validate();
  discriminator.validate();
  require(latent_dim > 0, ErrorCode::dimension,
          "vaegan: latent_dim must be > 0");
  require(encoder.output_dim() == static_cast<std::size_t>(2 * latent_dim),
          ErrorCode::dimension, "vaegan: encoder must output 2 * latent_dim");
  require(decoder_generator.input_dim() == static_cast<std::size_t>(latent_dim),
          ErrorCode::dimension, "vaegan: decoder input dim != latent_dim");
  require(decoder_generator.output_dim() == discriminator.input_dim(),
          ErrorCode::dimension, "vaegan: decoder/discriminator dim mismatch");
  require(discriminator.output_dim() == 1, ErrorCode::dimension,
          "vaegan: discriminator output dim != 1");
}

ArchPreset arch_preset(const std::string& name) {
  ArchPreset p;
  p.name = name;
  if (name == "default") {
    p.hidden_width = 64;
    p.hidden_layers = 4;
  } else if (name == "reference") {
    p.hidden_width = 96;
    p.hidden_layers = 2;
  } else if (name == "tiny") {
    p.hidden_width = 32;
    p.hidden_layers = 2;
  } else {
    fail(ErrorCode::config, "unknown arch preset: " + name);
  }
  return p;
}

std::vector<LayerSpec> generator_specs(const ArchPreset& arch, int latent_dim,
                                       int data_dim) {
  std::vector<LayerSpec> specs;
  std::size_t in = latent_dim;
  for (int i = 0; i < arch.hidden_layers; ++i) {
    specs.push_back({in, static_cast<std::size_t>(arch.hidden_width),
                     arch.gen_hidden, arch.leaky_slope});
    in = arch.hidden_width;
  }
  specs.push_back({in, static_cast<std::size_t>(data_dim), arch.gen_output,
                   arch.leaky_slope});
  return specs;
}

std::vector<LayerSpec> discriminator_specs(const ArchPreset& arch,
                                           int data_dim) {
  std::vector<LayerSpec> specs;
  std::size_t in = data_dim;
  for (int i = 0; i < arch.hidden_layers; ++i) {
    specs.push_back({in, static_cast<std::size_t>(arch.hidden_width),
                     arch.disc_hidden, arch.leaky_slope});
    in = arch.hidden_width;
  }
  specs.push_back({in, 1, Activation::identity, arch.leaky_slope});
  return specs;
}

std::vector<LayerSpec> encoder_specs(const ArchPreset& arch, int data_dim,
                                     int latent_dim) {
  std::vector<LayerSpec> specs;
  std::size_t in = data_dim;
  for (int i = 0; i < arch.hidden_layers; ++i) {
    specs.push_back({in, static_cast<std::size_t>(arch.hidden_width),
                     arch.disc_hidden, arch.leaky_slope});
    in = arch.hidden_width;
  }
  specs.push_back({in, static_cast<std::size_t>(2 * latent_dim),
                   Activation::identity, arch.leaky_slope});
  return specs;
}

Vec dp_sgd_aggregate(const std::vector<Vec>& per_sample_grads,
                     const DpConfig& dp, Rng& rng) {
  require(!per_sample_grads.empty(), ErrorCode::invalid_argument,
          "dp_sgd_aggregate: no gradients");
  const std::size_t dim = per_sample_grads.front().size();
  for (const Vec& g : per_sample_grads)
    require(g.size() == dim, ErrorCode::dimension,
            "dp_sgd_aggregate: non-uniform gradient length");
  const bool clip = std::isfinite(dp.clip_norm);
  if (clip)
    require(dp.clip_norm > 0.0, ErrorCode::invalid_argument,
            "dp_sgd_aggregate: clip_norm must be > 0");

  Vec sum(dim, 0.0);
  Vec clipped;
  for (const Vec& g : per_sample_grads) {
    const Vec* contribution = &g;
    if (clip) {
      clipped = g;
      double n = norm(clipped);
      // Rescale until the norm is within the threshold; rounding can leave
      // it an ulp over after one pass.
      int guard = 0;
      while (n > dp.clip_norm && guard++ < 4) {
        scale(clipped, dp.clip_norm / n);
        n = norm(clipped);
      }
      require(n <= dp.clip_norm, ErrorCode::internal,
              "dp_sgd_aggregate: clipped norm exceeds threshold");
      contribution = &clipped;
    }
    axpy(1.0, *contribution, sum);
  }
  if (dp.noise_scale > 0.0) {
    const double std_dev = dp.noise_scale * dp.clip_norm;
    require(std::isfinite(std_dev), ErrorCode::invalid_argument,
            "dp_sgd_aggregate: noise requires a finite clip_norm");
    for (double& v : sum) v += std_dev * rng.normal();
  }
  scale(sum, 1.0 / static_cast<double>(per_sample_grads.size()));
  return sum;
}

namespace {

struct NetOptimizer {
  Vec params;
  AdamState state;

  explicit NetOptimizer(const MlpNetwork& net)
      : params(parameters_flatten(net)) {}

  void apply(MlpNetwork& net, const Vec& grad, const TrainConfig& cfg) {
    adam_step(params, grad, state, cfg.lr, cfg.adam_beta1, cfg.adam_beta2);
    parameters_assign(net, params);
  }
};

// Per-example discriminator gradient over one (real, fake) pair, flattened.
// Returns the pair's loss contribution through `loss_out`.
Vec disc_pair_gradient(const MlpNetwork& disc, const Vec& real, const Vec& fake,
                       GanVariant variant, double& loss_out) {
  ForwardTrace tr_real, tr_fake;
  const double logit_real = mlp_forward_traced(disc, real, tr_real)[0];
  const double logit_fake = mlp_forward_traced(disc, fake, tr_fake)[0];
  double d_real, d_fake;
  if (variant == GanVariant::standard) {
    loss_out = softplus(-logit_real) + softplus(logit_fake);
    d_real = -sigmoid(-logit_real);
    d_fake = sigmoid(logit_fake);
  } else {
    loss_out = logit_fake - logit_real;
    d_real = -1.0;
    d_fake = 1.0;
  }
  MlpGradients g = mlp_backward_traced(disc, tr_real, Vec{d_real});
  accumulate(g, mlp_backward_traced(disc, tr_fake, Vec{d_fake}));
  return gradients_flatten(disc, g);
}

}  // namespace

GanModel gan_train(const std::vector<Vec>& data, const TrainConfig& cfg,
                   const ArchPreset& arch, int latent_dim, GanVariant variant,
                   TrainLog* log) {
  check_data(data);
  cfg.validate(data.size());
  require(latent_dim >= 1, ErrorCode::config, "latent_dim must be >= 1");
  if (variant == GanVariant::wasserstein_clipped)
    require(cfg.weight_clip.has_value(), ErrorCode::config,
            "wasserstein variant requires train.weight_clip");

  const int data_dim = static_cast<int>(data.front().size());
  Rng rng(cfg.seed);
  GanModel model;
  model.latent_dim = latent_dim;
  model.variant = variant;
  model.generator = build_mlp(generator_specs(arch, latent_dim, data_dim), rng);
  model.discriminator = build_mlp(discriminator_specs(arch, data_dim), rng);
  model.validate();

  NetOptimizer gen_opt(model.generator);
  NetOptimizer disc_opt(model.discriminator);
  const DpConfig dp = cfg.dp.value_or(dp_disabled());
  const std::size_t batch = cfg.batch_size;

  std::vector<Vec> per_sample(batch);
  double last_d_loss = 0.0, last_g_loss = 0.0;

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    for (int dstep = 0; dstep < cfg.disc_steps_per_gen_step; ++dstep) {
      double d_loss = 0.0;
      for (std::size_t b = 0; b < batch; ++b) {
        const Vec& real = data[rng.uniform_index(data.size())];
        const Vec fake =
            mlp_forward(model.generator, rng.normal_vec(latent_dim));
        double pair_loss;
        per_sample[b] = disc_pair_gradient(model.discriminator, real, fake,
                                           variant, pair_loss);
        d_loss += pair_loss;
      }
      const Vec agg = dp_sgd_aggregate(per_sample, dp, rng);
      disc_opt.apply(model.discriminator, agg, cfg);
      if (variant == GanVariant::wasserstein_clipped) {
        clip_parameters(model.discriminator, *cfg.weight_clip);
        disc_opt.params = parameters_flatten(model.discriminator);
      }
      last_d_loss = d_loss / static_cast<double>(batch);
    }

    // Generator step: gradients flow through the (frozen) discriminator.
    Vec gen_grad(parameter_count(model.generator), 0.0);
    double g_loss = 0.0;
    for (std::size_t b = 0; b < batch; ++b) {
      ForwardTrace tr_gen, tr_disc;
      const Vec z = rng.normal_vec(latent_dim);
      const Vec fake = mlp_forward_traced(model.generator, z, tr_gen);
      const double logit =
          mlp_forward_traced(model.discriminator, fake, tr_disc)[0];
      double d_logit;
      if (variant == GanVariant::standard) {
        g_loss += softplus(-logit);
        d_logit = -sigmoid(-logit);
      } else {
        g_loss += -logit;
        d_logit = -1.0;
      }
      const Vec d_fake =
          mlp_backward_traced(model.discriminator, tr_disc, Vec{d_logit})
              .input_grad;
      const MlpGradients g = mlp_backward_traced(model.generator, tr_gen, d_fake);
      const Vec flat = gradients_flatten(model.generator, g);
      axpy(1.0, flat, gen_grad);
    }
    scale(gen_grad, 1.0 / static_cast<double>(batch));
    gen_opt.apply(model.generator, gen_grad, cfg);
    last_g_loss = g_loss / static_cast<double>(batch);

    if (iter % cfg.log_interval == 0 || iter + 1 == cfg.iterations) {
      check_divergence(last_d_loss, "gan discriminator");
      check_divergence(last_g_loss, "gan generator");
      if (log) log->entries.push_back({iter, last_d_loss, last_g_loss, 0.0, 0.0});
    }
  }
  return model;
}

double vae_kl(const Vec& mu, const Vec& logvar) {
  require(mu.size() == logvar.size(), ErrorCode::dimension,
          "vae_kl: size mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    kl += 0.5 * (mu[i] * mu[i] + std::exp(logvar[i]) - 1.0 - logvar[i]);
  return kl;
}

VaeLossParts vae_loss_and_grads(const MlpNetwork& encoder,
                                const MlpNetwork& decoder, const Vec& x,
                                const Vec& eps, double recon_weight) {
  const std::size_t latent = decoder.input_dim();
  require(eps.size() == latent, ErrorCode::dimension,
          "vae_loss_and_grads: eps size mismatch");
  ForwardTrace tr_enc, tr_dec;
  const Vec enc_out = mlp_forward_traced(encoder, x, tr_enc);
  require(enc_out.size() == 2 * latent, ErrorCode::dimension,
          "vae_loss_and_grads: encoder output size mismatch");

  // Clamped log-variance keeps exp() in range early in training.
  Vec mu(latent), logvar(latent), sigma(latent);
  for (std::size_t i = 0; i < latent; ++i) {
    mu[i] = enc_out[i];
    logvar[i] = std::clamp(enc_out[latent + i], -10.0, 10.0);
    sigma[i] = std::exp(0.5 * logvar[i]);
  }
  Vec z(latent);
  for (std::size_t i = 0; i < latent; ++i) z[i] = mu[i] + sigma[i] * eps[i];

  const Vec x_hat = mlp_forward_traced(decoder, z, tr_dec);
  require(x_hat.size() == x.size(), ErrorCode::dimension,
          "vae_loss_and_grads: decoder/data dim mismatch");

  VaeLossParts parts;
  Vec d_xhat(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x_hat[i] - x[i];
    parts.recon += diff * diff;
    d_xhat[i] = recon_weight * 2.0 * diff;
  }
  parts.kl = vae_kl(mu, logvar);
  parts.loss = recon_weight * parts.recon + parts.kl;

  parts.decoder_grads = mlp_backward_traced(decoder, tr_dec, d_xhat);
  const Vec& dz = parts.decoder_grads.input_grad;

  Vec d_enc_out(2 * latent);
  for (std::size_t i = 0; i < latent; ++i) {
    d_enc_out[i] = dz[i] + mu[i];  // reparameterization + KL
    const bool interior = enc_out[latent + i] > -10.0 && enc_out[latent + i] < 10.0;
    const double d_logvar =
        dz[i] * eps[i] * 0.5 * sigma[i] + 0.5 * (std::exp(logvar[i]) - 1.0);
    d_enc_out[latent + i] = interior ? d_logvar : 0.0;
  }
  parts.encoder_grads = mlp_backward_traced(encoder, tr_enc, d_enc_out);
  return parts;
}

VaeModel vae_train(const std::vector<Vec>& data, const TrainConfig& cfg,
                   const ArchPreset& arch, int latent_dim, TrainLog* log) {
  check_data(data);
  cfg.validate(data.size());
  require(latent_dim >= 1, ErrorCode::config, "latent_dim must be >= 1");

  const int data_dim = static_cast<int>(data.front().size());
  Rng rng(cfg.seed);
  VaeModel model;
  model.latent_dim = latent_dim;
  model.encoder = build_mlp(encoder_specs(arch, data_dim, latent_dim), rng);
  model.decoder = build_mlp(generator_specs(arch, latent_dim, data_dim), rng);
  model.validate();

  NetOptimizer enc_opt(model.encoder);
  NetOptimizer dec_opt(model.decoder);
  const std::size_t batch = cfg.batch_size;

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    MlpGradients enc_acc = zero_gradients_like(model.encoder);
    MlpGradients dec_acc = zero_gradients_like(model.decoder);
    double loss = 0.0, recon = 0.0, kl = 0.0;
    for (std::size_t b = 0; b < batch; ++b) {
      const Vec& x = data[rng.uniform_index(data.size())];
      const Vec eps = rng.normal_vec(latent_dim);
      VaeLossParts parts = vae_loss_and_grads(model.encoder, model.decoder, x, eps);
      loss += parts.loss;
      recon += parts.recon;
      kl += parts.kl;
      accumulate(enc_acc, parts.encoder_grads);
      accumulate(dec_acc, parts.decoder_grads);
    }
    const double inv_batch = 1.0 / static_cast<double>(batch);
    Vec enc_grad = gradients_flatten(model.encoder, enc_acc);
    Vec dec_grad = gradients_flatten(model.decoder, dec_acc);
    scale(enc_grad, inv_batch);
    scale(dec_grad, inv_batch);
    enc_opt.apply(model.encoder, enc_grad, cfg);
    dec_opt.apply(model.decoder, dec_grad, cfg);

    if (iter % cfg.log_interval == 0 || iter + 1 == cfg.iterations) {
      const double mean_loss = loss * inv_batch;
      check_divergence(mean_loss, "vae");
      if (log)
        log->entries.push_back(
            {iter, 0.0, 0.0, -mean_loss, recon * inv_batch});
    }
  }
  return model;
}

VaeganModel vaegan_train(const std::vector<Vec>& data, const TrainConfig& cfg,
                         const ArchPreset& arch, int latent_dim,
                         double recon_weight, TrainLog* log) {
  check_data(data);
  cfg.validate(data.size());
  require(latent_dim >= 1, ErrorCode::config, "latent_dim must be >= 1");
  const double adv_weight = cfg.vaegan_adv_weight;
  require(adv_weight >= 0.0, ErrorCode::config,
          "train.vaegan_adv_weight must be >= 0");

  const int data_dim = static_cast<int>(data.front().size());
  // Two streams: the VAE path consumes `rng` exactly like vae_train, the
  // adversarial path has its own, so disabling it leaves the VAE
  // trajectory unchanged.
  Rng rng(cfg.seed);
  Rng adv_rng = Rng(cfg.seed).fork(0xadf);

  VaeganModel model;
  model.latent_dim = latent_dim;
  model.recon_weight = recon_weight;
  model.encoder = build_mlp(encoder_specs(arch, data_dim, latent_dim), rng);
  model.decoder_generator =
      build_mlp(generator_specs(arch, latent_dim, data_dim), rng);
  model.discriminator =
      build_mlp(discriminator_specs(arch, data_dim), adv_rng);
  model.validate();

  NetOptimizer enc_opt(model.encoder);
  NetOptimizer dec_opt(model.decoder_generator);
  NetOptimizer disc_opt(model.discriminator);
  const DpConfig dp = cfg.dp.value_or(dp_disabled());
  const std::size_t batch = cfg.batch_size;
  std::vector<Vec> per_sample(batch);

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    double d_loss = 0.0;
    if (adv_weight > 0.0) {
      for (std::size_t b = 0; b < batch; ++b) {
        const Vec& real = data[adv_rng.uniform_index(data.size())];
        const Vec fake = mlp_forward(model.decoder_generator,
                                     adv_rng.normal_vec(latent_dim));
        double pair_loss;
        per_sample[b] = disc_pair_gradient(model.discriminator, real, fake,
                                           GanVariant::standard, pair_loss);
        d_loss += pair_loss;
      }
      const Vec agg = dp_sgd_aggregate(per_sample, dp, adv_rng);
      disc_opt.apply(model.discriminator, agg, cfg);
      d_loss /= static_cast<double>(batch);
    }

    MlpGradients enc_acc = zero_gradients_like(model.encoder);
    MlpGradients dec_acc = zero_gradients_like(model.decoder_generator);
    double loss = 0.0, recon = 0.0;
    for (std::size_t b = 0; b < batch; ++b) {
      const Vec& x = data[rng.uniform_index(data.size())];
      const Vec eps = rng.normal_vec(latent_dim);
      VaeLossParts parts = vae_loss_and_grads(
          model.encoder, model.decoder_generator, x, eps, recon_weight);
      loss += parts.loss;
      recon += parts.recon;
      accumulate(enc_acc, parts.encoder_grads);
      accumulate(dec_acc, parts.decoder_grads);
    }
    double adv_loss = 0.0;
    if (adv_weight > 0.0) {
      for (std::size_t b = 0; b < batch; ++b) {
        ForwardTrace tr_gen, tr_disc;
        const Vec z = adv_rng.normal_vec(latent_dim);
        const Vec fake = mlp_forward_traced(model.decoder_generator, z, tr_gen);
        const double logit =
            mlp_forward_traced(model.discriminator, fake, tr_disc)[0];
        adv_loss += softplus(-logit);
        const Vec d_fake =
            mlp_backward_traced(model.discriminator, tr_disc,
                                Vec{-adv_weight * sigmoid(-logit)})
                .input_grad;
        accumulate(dec_acc, mlp_backward_traced(model.decoder_generator,
                                                tr_gen, d_fake));
      }
    }
    const double inv_batch = 1.0 / static_cast<double>(batch);
    Vec enc_grad = gradients_flatten(model.encoder, enc_acc);
    Vec dec_grad = gradients_flatten(model.decoder_generator, dec_acc);
    scale(enc_grad, inv_batch);
    scale(dec_grad, inv_batch);
    enc_opt.apply(model.encoder, enc_grad, cfg);
    dec_opt.apply(model.decoder_generator, dec_grad, cfg);

    if (iter % cfg.log_interval == 0 || iter + 1 == cfg.iterations) {
      const double mean_loss = loss * inv_batch;
      check_divergence(mean_loss, "vaegan");
      check_divergence(d_loss, "vaegan discriminator");
      if (log)
        log->entries.push_back({iter, d_loss,
                                adv_loss * inv_batch, -mean_loss,
                                recon * inv_batch});
    }
  }
  return model;
}

double discriminator_score(const GanModel& model, const Vec& x) {
  return mlp_forward(model.discriminator, x)[0];
}

double discriminator_score(const VaeganModel& model, const Vec& x) {
  return mlp_forward(model.discriminator, x)[0];
}

std::string model_variant_name(ModelVariant v) {
  switch (v) {
    case ModelVariant::gan: return "gan";
    case ModelVariant::wgan: return "wgan";
    case ModelVariant::vae: return "vae";
    case ModelVariant::vaegan: return "vaegan";
  }
  fail(ErrorCode::internal, "unknown model variant");
}

ModelVariant model_variant_from_name(const std::string& name) {
  if (name == "gan") return ModelVariant::gan;
  if (name == "wgan") return ModelVariant::wgan;
  if (name == "vae") return ModelVariant::vae;
  if (name == "vaegan") return ModelVariant::vaegan;
  fail(ErrorCode::config, "unknown model variant: " + name);
}

int AnyModel::latent_dim() const {
  switch (variant) {
    case ModelVariant::gan:
    case ModelVariant::wgan: return gan->latent_dim;
    case ModelVariant::vae: return vae->latent_dim;
    case ModelVariant::vaegan: return vaegan->latent_dim;
  }
  fail(ErrorCode::internal, "unknown model variant");
}

const MlpNetwork& AnyModel::generator() const {
  switch (variant) {
    case ModelVariant::gan:
    case ModelVariant::wgan: return gan->generator;
    case ModelVariant::vae: return vae->decoder;
    case ModelVariant::vaegan: return vaegan->decoder_generator;
  }
  fail(ErrorCode::internal, "unknown model variant");
}

const MlpNetwork* AnyModel::discriminator() const {
  switch (variant) {
    case ModelVariant::gan:
    case ModelVariant::wgan: return &gan->discriminator;
    case ModelVariant::vae: return nullptr;
    case ModelVariant::vaegan: return &vaegan->discriminator;
  }
  fail(ErrorCode::internal, "unknown model variant");
}

void AnyModel::validate() const {
  switch (variant) {
    case ModelVariant::gan:
    case ModelVariant::wgan:
      require(gan.has_value(), ErrorCode::internal, "missing gan payload");
      gan->validate();
      return;
    case ModelVariant::vae:
      require(vae.has_value(), ErrorCode::internal, "missing vae payload");
      vae->validate();
      return;
    case ModelVariant::vaegan:
      require(vaegan.has_value(), ErrorCode::internal, "missing vaegan payload");
      vaegan->validate();
      return;
  }
  fail(ErrorCode::internal, "unknown model variant");
}

AnyModel train_any(ModelVariant variant, const std::vector<Vec>& data,
                   const TrainConfig& cfg, const ArchPreset& arch,
                   int latent_dim, TrainLog* log) {
  AnyModel out;
  out.variant = variant;
  switch (variant) {
    case ModelVariant::gan:
      out.gan = gan_train(data, cfg, arch, latent_dim, GanVariant::standard, log);
      break;
    case ModelVariant::wgan:
      out.gan = gan_train(data, cfg, arch, latent_dim,
                          GanVariant::wasserstein_clipped, log);
      break;
    case ModelVariant::vae:
      out.vae = vae_train(data, cfg, arch, latent_dim, log);
      break;
    case ModelVariant::vaegan:
      out.vaegan = vaegan_train(data, cfg, arch, latent_dim, 1.0, log);
      break;
  }
  out.validate();
  return out;
}

void save_model_networks(const AnyModel& model, const std::string& dir) {
  model.validate();
  ensure_directory(dir);
  switch (model.variant) {
    case ModelVariant::gan:
    case ModelVariant::wgan:
      mlp_save(model.gan->generator, join_path(dir, "generator.json"));
      mlp_save(model.gan->discriminator, join_path(dir, "discriminator.json"));
      return;
    case ModelVariant::vae:
      mlp_save(model.vae->encoder, join_path(dir, "encoder.json"));
      mlp_save(model.vae->decoder, join_path(dir, "generator.json"));
      return;
    case ModelVariant::vaegan:
      mlp_save(model.vaegan->encoder, join_path(dir, "encoder.json"));
      mlp_save(model.vaegan->decoder_generator, join_path(dir, "generator.json"));
      mlp_save(model.vaegan->discriminator, join_path(dir, "discriminator.json"));
      return;
  }
  fail(ErrorCode::internal, "unknown model variant");
}

AnyModel load_model_networks(ModelVariant variant, int latent_dim,
                             const std::string& dir) {
  AnyModel out;
  out.variant = variant;
  switch (variant) {
    case ModelVariant::gan:
    case ModelVariant::wgan: {
      GanModel g;
      g.latent_dim = latent_dim;
      g.variant = variant == ModelVariant::wgan
                      ? GanVariant::wasserstein_clipped
                      : GanVariant::standard;
      g.generator = mlp_load(join_path(dir, "generator.json"));
      g.discriminator = mlp_load(join_path(dir, "discriminator.json"));
      out.gan = std::move(g);
      break;
    }
    case ModelVariant::vae: {
      VaeModel v;
      v.latent_dim = latent_dim;
      v.encoder = mlp_load(join_path(dir, "encoder.json"));
      v.decoder = mlp_load(join_path(dir, "generator.json"));
      out.vae = std::move(v);
      break;
    }
    case ModelVariant::vaegan: {
      VaeganModel v;
      v.latent_dim = latent_dim;
      v.encoder = mlp_load(join_path(dir, "encoder.json"));
      v.decoder_generator = mlp_load(join_path(dir, "generator.json"));
      v.discriminator = mlp_load(join_path(dir, "discriminator.json"));
      out.vaegan = std::move(v);
      break;
    }
  }
  out.validate();
  return out;
}

}  // namespace mia
