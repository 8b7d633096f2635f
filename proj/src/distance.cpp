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

#include "mia/distance.hpp"

namespace mia {

void DistanceWeights::validate() const {
  require(lambda1 >= 0.0 && lambda2 >= 0.0 && lambda3 >= 0.0,
          ErrorCode::invalid_argument, "distance weights must be >= 0");
  require(lambda1 > 0.0 || lambda2 > 0.0 || lambda3 > 0.0,
          ErrorCode::invalid_argument,
          "at least one distance weight must be positive");
}

double l2_term(const Vec& x, const Vec& y, L2Form form) {
  require(x.size() == y.size(), ErrorCode::dimension,
          "l2_term: length mismatch");
  require(!x.empty(), ErrorCode::invalid_argument, "l2_term: empty vectors");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  if (form == L2Form::mean) s /= static_cast<double>(x.size());
  return s;
}

double reg_term(const Vec& z) {
  require(!z.empty(), ErrorCode::invalid_argument, "reg_term: empty vector");
  const double d = squared_norm(z) - static_cast<double>(z.size());
  return d * d;
}

double full_distance(const Vec& x, const Vec& x_hat,
                     const std::optional<Vec>& z, const DistanceWeights& w,
                     const PerceptualHook& hook, L2Form form) {
  w.validate();
  double total = 0.0;
  if (w.lambda1 > 0.0) total += w.lambda1 * l2_term(x, x_hat, form);
  if (w.lambda2 > 0.0) {
    require(static_cast<bool>(hook), ErrorCode::invalid_argument,
            "full_distance: lambda2 > 0 but no perceptual hook supplied");
    const double p = hook(x, x_hat);
    check_finite(p, "perceptual hook");
    total += w.lambda2 * p;
  }
  if (w.lambda3 > 0.0) {
    require(z.has_value(), ErrorCode::invalid_argument,
            "full_distance: lambda3 > 0 but no latent code supplied");
    total += w.lambda3 * reg_term(*z);
  }
  check_finite(total, "full_distance");
  return total;
}

Vec full_distance_gradient_wrt_z(const Vec& x, const MlpNetwork& generator,
                                 const Vec& z, const DistanceWeights& w,
                                 L2Form form) {
  w.validate();
  require(w.lambda2 == 0.0, ErrorCode::invalid_argument,
          "full_distance_gradient_wrt_z: perceptual term has no gradient");
  Vec grad(z.size(), 0.0);
  if (w.lambda1 > 0.0) {
    const Vec x_hat = mlp_forward(generator, z);
    require(x_hat.size() == x.size(), ErrorCode::dimension,
            "full_distance_gradient_wrt_z: query/generator dim mismatch");
    Vec out_grad(x_hat.size());
    const double scale_l2 =
        form == L2Form::mean ? 2.0 / static_cast<double>(x.size()) : 2.0;
    for (std::size_t i = 0; i < x_hat.size(); ++i)
      out_grad[i] = w.lambda1 * scale_l2 * (x_hat[i] - x[i]);
    grad = mlp_backward(generator, z, out_grad).input_grad;
  }
  if (w.lambda3 > 0.0) {
    const double excess = squared_norm(z) - static_cast<double>(z.size());
    axpy(w.lambda3 * 4.0 * excess, z, grad);
  }
  check_finite(grad, "full_distance_gradient_wrt_z");
  return grad;
}

double full_distance_at_z(const Vec& x, const MlpNetwork& generator,
                          const Vec& z, const DistanceWeights& w,
                          const PerceptualHook& hook, L2Form form) {
  const Vec x_hat = mlp_forward(generator, z);
  return full_distance(x, x_hat, z, w, hook, form);
}

}  // namespace mia
