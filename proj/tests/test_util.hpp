#pragma once

#include <cmath>
#include <functional>

#include "mia/mlp.hpp"

namespace mia::testutil {

// Central finite differences of a scalar function.
inline Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& x,
                       double h = 1e-5) {
  Vec g(x.size(), 0.0);
  Vec p = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = p[i];
    p[i] = orig + h;
    const double fp = f(p);
    p[i] = orig - h;
    const double fm = f(p);
    p[i] = orig;
    g[i] = (fp - fm) / (2.0 * h);
  }
  return g;
}

inline double max_rel_error(const Vec& got, const Vec& want) {
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    const double denom = std::max(1e-8, std::abs(want[i]));
    worst = std::max(worst, std::abs(got[i] - want[i]) / denom);
  }
  return worst;
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Plain loop re-evaluation of an MLP, written independently of mlp_forward.
inline Vec naive_mlp_eval(const MlpNetwork& net, const Vec& input) {
  Vec cur = input;
  for (const Layer& layer : net.layers) {
    Vec next(layer.weight.rows, 0.0);
    for (std::size_t i = 0; i < layer.weight.rows; ++i) {
      double s = layer.bias[i];
      for (std::size_t j = 0; j < layer.weight.cols; ++j)
        s += layer.weight.at(i, j) * cur[j];
      switch (layer.activation) {
        case Activation::identity: next[i] = s; break;
        case Activation::relu: next[i] = s > 0 ? s : 0.0; break;
        case Activation::leaky_relu:
          next[i] = s > 0 ? s : layer.leaky_slope * s;
          break;
        case Activation::sigmoid: next[i] = 1.0 / (1.0 + std::exp(-s)); break;
        case Activation::tanh: next[i] = std::tanh(s); break;
      }
    }
    cur = next;
  }
  return cur;
}

inline MlpNetwork random_net(const std::vector<LayerSpec>& specs,
                             std::uint64_t seed) {
  Rng rng(seed);
  return build_mlp(specs, rng);
}

}  // namespace mia::testutil
