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

#include "mia/mlp.hpp"

#include <cmath>
#include <sstream>

#include "mia/io_util.hpp"
#include "json.hpp"

namespace mia {

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::identity: return "identity";
    case Activation::relu: return "relu";
    case Activation::leaky_relu: return "leaky_relu";
    case Activation::sigmoid: return "sigmoid";
    case Activation::tanh: return "tanh";
  }
  fail(ErrorCode::internal, "unknown activation");
}

Activation activation_from_name(const std::string& name) {
  if (name == "identity") return Activation::identity;
  if (name == "relu") return Activation::relu;
  if (name == "leaky_relu") return Activation::leaky_relu;
  if (name == "sigmoid") return Activation::sigmoid;
  if (name == "tanh") return Activation::tanh;
  fail(ErrorCode::invalid_argument, "unknown activation: " + name);
}

double apply_activation(Activation a, double x, double leaky_slope) {
  switch (a) {
    case Activation::identity: return x;
    case Activation::relu: return x > 0.0 ? x : 0.0;
    case Activation::leaky_relu: return x > 0.0 ? x : leaky_slope * x;
    case Activation::sigmoid:
      return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                      : std::exp(x) / (1.0 + std::exp(x));
    case Activation::tanh: return std::tanh(x);
  }
  fail(ErrorCode::internal, "unknown activation");
}

double activation_derivative(Activation a, double x, double leaky_slope) {
  switch (a) {
    case Activation::identity: return 1.0;
    case Activation::relu: return x > 0.0 ? 1.0 : 0.0;
    case Activation::leaky_relu: return x > 0.0 ? 1.0 : leaky_slope;
    case Activation::sigmoid: {
      const double s = apply_activation(Activation::sigmoid, x, 0.0);
      return s * (1.0 - s);
    }
    case Activation::tanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
  }
  fail(ErrorCode::internal, "unknown activation");
}

std::size_t MlpNetwork::input_dim() const {
  require(!layers.empty(), ErrorCode::invalid_argument, "empty network");
  return layers.front().input_dim();
}

std::size_t MlpNetwork::output_dim() const {
  require(!layers.empty(), ErrorCode::invalid_argument, "empty network");
  return layers.back().output_dim();
}

void MlpNetwork::validate() const {
  require(!layers.empty(), ErrorCode::invalid_argument, "empty network");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const Layer& l = layers[i];
    require(l.weight.rows > 0 && l.weight.cols > 0, ErrorCode::dimension,
            "layer " + std::to_string(i) + ": empty weight matrix");
    require(l.weight.data.size() == l.weight.rows * l.weight.cols,
            ErrorCode::dimension,
            "layer " + std::to_string(i) + ": weight storage mismatch");
    require(l.bias.size() == l.weight.rows, ErrorCode::dimension,
            "layer " + std::to_string(i) + ": bias size mismatch");
    if (i + 1 < layers.size()) {
      require(l.output_dim() == layers[i + 1].input_dim(),
              ErrorCode::dimension,
              "layer " + std::to_string(i) + " output dim " +
                  std::to_string(l.output_dim()) + " != layer " +
                  std::to_string(i + 1) + " input dim " +
                  std::to_string(layers[i + 1].input_dim()));
    }
  }
}

Vec mlp_forward(const MlpNetwork& net, const Vec& input) {
  ForwardTrace trace;
  return mlp_forward_traced(net, input, trace);
}

Vec mlp_forward_traced(const MlpNetwork& net, const Vec& input,
                       ForwardTrace& trace) {
  require(!net.layers.empty(), ErrorCode::invalid_argument, "empty network");
  require(input.size() == net.input_dim(), ErrorCode::dimension,
          "mlp_forward: input size " + std::to_string(input.size()) +
              " != layer 0 input dim " + std::to_string(net.input_dim()));
  trace.pre_activations.clear();
  trace.activations.clear();
  trace.activations.push_back(input);
  Vec current = input;
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const Layer& l = net.layers[i];
    require(current.size() == l.input_dim(), ErrorCode::dimension,
            "mlp_forward: layer " + std::to_string(i) + " expects dim " +
                std::to_string(l.input_dim()));
    Vec pre = matvec(l.weight, current);
    for (std::size_t j = 0; j < pre.size(); ++j) pre[j] += l.bias[j];
    Vec post(pre.size());
    for (std::size_t j = 0; j < pre.size(); ++j)
      post[j] = apply_activation(l.activation, pre[j], l.leaky_slope);
    trace.pre_activations.push_back(std::move(pre));
    trace.activations.push_back(post);
    current = std::move(post);
  }
  check_finite(current, "mlp_forward output");
  return current;
}

MlpGradients mlp_backward(const MlpNetwork& net, const Vec& input,
                          const Vec& output_grad) {
  ForwardTrace trace;
  mlp_forward_traced(net, input, trace);
  return mlp_backward_traced(net, trace, output_grad);
}

MlpGradients mlp_backward_traced(const MlpNetwork& net,
                                 const ForwardTrace& trace,
                                 const Vec& output_grad) {
  require(output_grad.size() == net.output_dim(), ErrorCode::dimension,
          "mlp_backward: output_grad size mismatch");
  MlpGradients grads = zero_gradients_like(net);
  Vec delta = output_grad;
  for (std::size_t li = net.layers.size(); li-- > 0;) {
    const Layer& l = net.layers[li];
    const Vec& pre = trace.pre_activations[li];
    const Vec& layer_input = trace.activations[li];
    // dL/d(pre-activation)
    for (std::size_t j = 0; j < delta.size(); ++j)
      delta[j] *= activation_derivative(l.activation, pre[j], l.leaky_slope);
    grads.layers[li].bias = delta;
    add_outer(grads.layers[li].weight, 1.0, delta, layer_input);
    delta = matvec_transposed(l.weight, delta);
  }
  grads.input_grad = std::move(delta);
  check_finite(grads.input_grad, "mlp_backward input_grad");
  return grads;
}

MlpGradients zero_gradients_like(const MlpNetwork& net) {
  MlpGradients g;
  g.layers.reserve(net.layers.size());
  for (const Layer& l : net.layers) {
    LayerGrads lg;
    lg.weight = Mat(l.weight.rows, l.weight.cols);
    lg.bias = Vec(l.bias.size(), 0.0);
    g.layers.push_back(std::move(lg));
  }
  g.input_grad = Vec(net.input_dim(), 0.0);
  return g;
}

void accumulate(MlpGradients& acc, const MlpGradients& g) {
  require(acc.layers.size() == g.layers.size(), ErrorCode::dimension,
          "accumulate: layer count mismatch");
  for (std::size_t i = 0; i < acc.layers.size(); ++i) {
    Vec& w = acc.layers[i].weight.data;
    const Vec& gw = g.layers[i].weight.data;
    for (std::size_t j = 0; j < w.size(); ++j) w[j] += gw[j];
    axpy(1.0, g.layers[i].bias, acc.layers[i].bias);
  }
}

std::size_t parameter_count(const MlpNetwork& net) {
  std::size_t n = 0;
  for (const Layer& l : net.layers) n += l.weight.data.size() + l.bias.size();
  return n;
}

Vec parameters_flatten(const MlpNetwork& net) {
  Vec flat;
  flat.reserve(parameter_count(net));
  for (const Layer& l : net.layers) {
    flat.insert(flat.end(), l.weight.data.begin(), l.weight.data.end());
    flat.insert(flat.end(), l.bias.begin(), l.bias.end());
  }
  return flat;
}

void parameters_assign(MlpNetwork& net, const Vec& flat) {
  require(flat.size() == parameter_count(net), ErrorCode::dimension,
          "parameters_assign: size mismatch");
  std::size_t pos = 0;
  for (Layer& l : net.layers) {
    for (double& w : l.weight.data) w = flat[pos++];
    for (double& b : l.bias) b = flat[pos++];
  }
}

Vec gradients_flatten(const MlpNetwork& net, const MlpGradients& grads) {
  require(grads.layers.size() == net.layers.size(), ErrorCode::dimension,
          "gradients_flatten: layer count mismatch");
  Vec flat;
  flat.reserve(parameter_count(net));
  for (const LayerGrads& lg : grads.layers) {
    flat.insert(flat.end(), lg.weight.data.begin(), lg.weight.data.end());
    flat.insert(flat.end(), lg.bias.begin(), lg.bias.end());
  }
  return flat;
}

MlpNetwork build_mlp(const std::vector<LayerSpec>& specs, Rng& rng) {
  require(!specs.empty(), ErrorCode::invalid_argument, "build_mlp: no layers");
  MlpNetwork net;
  for (const LayerSpec& spec : specs) {
    Layer l;
    l.weight = Mat(spec.output_dim, spec.input_dim);
    const double std_dev = std::sqrt(2.0 / static_cast<double>(spec.input_dim));
    for (double& w : l.weight.data) w = std_dev * rng.normal();
    l.bias = Vec(spec.output_dim, 0.0);
    l.activation = spec.activation;
    l.leaky_slope = spec.leaky_slope;
    net.layers.push_back(std::move(l));
  }
  net.validate();
  return net;
}

namespace {

void append_double_array(std::string& out, const Vec& values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  out += ']';
}

}  // namespace

std::string mlp_to_json(const MlpNetwork& net) {
  net.validate();
  std::string out;
  out += "{\"format_version\":1,";
  out += "\"input_dim\":" + std::to_string(net.input_dim()) + ',';
  out += "\"output_dim\":" + std::to_string(net.output_dim()) + ',';
  out += "\"layers\":[";
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    const Layer& l = net.layers[i];
    if (i) out += ',';
    out += "{\"rows\":" + std::to_string(l.weight.rows) + ',';
    out += "\"cols\":" + std::to_string(l.weight.cols) + ',';
    out += "\"weights\":";
    append_double_array(out, l.weight.data);
    out += ",\"bias\":";
    append_double_array(out, l.bias);
    out += ",\"activation\":\"" + activation_name(l.activation) + '"';
    if (l.activation == Activation::leaky_relu)
      out += ",\"slope\":" + format_double(l.leaky_slope);
    out += '}';
  }
  out += "]}\n";
  return out;
}

MlpNetwork mlp_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(ErrorCode::io, std::string("model parse error: ") + e.what());
  }
  try {
    require(doc.at("format_version").get<int>() == 1, ErrorCode::io,
            "unsupported model format_version");
    MlpNetwork net;
    for (const auto& jl : doc.at("layers")) {
      Layer l;
      l.weight.rows = jl.at("rows").get<std::size_t>();
      l.weight.cols = jl.at("cols").get<std::size_t>();
      l.weight.data = jl.at("weights").get<std::vector<double>>();
      l.bias = jl.at("bias").get<std::vector<double>>();
      l.activation = activation_from_name(jl.at("activation").get<std::string>());
      if (jl.contains("slope")) l.leaky_slope = jl.at("slope").get<double>();
      net.layers.push_back(std::move(l));
    }
    net.validate();
    require(doc.at("input_dim").get<std::size_t>() == net.input_dim() &&
                doc.at("output_dim").get<std::size_t>() == net.output_dim(),
            ErrorCode::io, "model header dims do not match layers");
    return net;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    fail(ErrorCode::io, std::string("model schema error: ") + e.what());
  }
}

void mlp_save(const MlpNetwork& net, const std::string& path) {
  write_file_atomic(path, mlp_to_json(net));
}

MlpNetwork mlp_load(const std::string& path) {
  return mlp_from_json(read_file(path));
}

}  // namespace mia
