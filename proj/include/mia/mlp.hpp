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

#include <cstddef>
#include <string>
#include <vector>

#include "mia/linalg.hpp"
#include "mia/rng.hpp"

namespace mia {

enum class Activation { identity, relu, leaky_relu, sigmoid, tanh };

std::string activation_name(Activation a);
Activation activation_from_name(const std::string& name);

double apply_activation(Activation a, double x, double leaky_slope);
// Derivative at the pre-activation value. At the relu kink the subgradient 0
// is used; leaky_relu takes the negative-side slope there.
double activation_derivative(Activation a, double x, double leaky_slope);

struct Layer {
  Mat weight;           // output_dim x input_dim
  Vec bias;             // output_dim
  Activation activation = Activation::identity;
  double leaky_slope = 0.2;

  std::size_t input_dim() const { return weight.cols; }
  std::size_t output_dim() const { return weight.rows; }
};

// Fully-connected network. Layer dimensions must chain; validate() checks
// the invariants and every operation rejects mismatched inputs.
struct MlpNetwork {
  std::vector<Layer> layers;

  std::size_t input_dim() const;
  std::size_t output_dim() const;
  void validate() const;
};

// Intermediate values of one forward pass, kept for backprop.
struct ForwardTrace {
  std::vector<Vec> pre_activations;   // one per layer
  std::vector<Vec> activations;       // input followed by each layer output
};

Vec mlp_forward(const MlpNetwork& net, const Vec& input);
Vec mlp_forward_traced(const MlpNetwork& net, const Vec& input,
                       ForwardTrace& trace);

struct LayerGrads {
  Mat weight;
  Vec bias;
};

struct MlpGradients {
  std::vector<LayerGrads> layers;
  Vec input_grad;
};

// Reverse-mode gradients of a scalar loss with the given dL/d(output).
// Returns dL/d(parameters) for every layer plus dL/d(input).
MlpGradients mlp_backward(const MlpNetwork& net, const Vec& input,
                          const Vec& output_grad);
// Same, reusing an existing forward trace for `input`.
MlpGradients mlp_backward_traced(const MlpNetwork& net,
                                 const ForwardTrace& trace,
                                 const Vec& output_grad);

MlpGradients zero_gradients_like(const MlpNetwork& net);
void accumulate(MlpGradients& acc, const MlpGradients& g);

std::size_t parameter_count(const MlpNetwork& net);
Vec parameters_flatten(const MlpNetwork& net);
void parameters_assign(MlpNetwork& net, const Vec& flat);
Vec gradients_flatten(const MlpNetwork& net, const MlpGradients& grads);

// Builders.
struct LayerSpec {
  std::size_t input_dim;
  std::size_t output_dim;
  Activation activation;
  double leaky_slope = 0.2;
};
// He-style init: weights ~ N(0, 2/fan_in), zero bias.
MlpNetwork build_mlp(const std::vector<LayerSpec>& specs, Rng& rng);

// Versioned JSON model format:
// {"format_version":1,"input_dim":..,"output_dim":..,
//  "layers":[{"rows":..,"cols":..,"weights":[..],"bias":[..],
//             "activation":"..","slope":..?}]}
// Doubles are written with 17 significant digits so write -> read -> write
// reproduces the bytes exactly.
std::string mlp_to_json(const MlpNetwork& net);
MlpNetwork mlp_from_json(const std::string& text);
void mlp_save(const MlpNetwork& net, const std::string& path);
MlpNetwork mlp_load(const std::string& path);

}  // namespace mia
