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

#include "mia/linalg.hpp"
#include "mia/mlp.hpp"

namespace mia {

// Weight toggles for the three distance terms: element-wise, perceptual
// (external hook), latent-norm regularizer. A zero weight removes the term
// exactly.
struct DistanceWeights {
  double lambda1 = 1.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;

  void validate() const;
};

// Optional externally supplied perceptual term. Evaluation-only: it has no
// gradient, so any weight on it forces a derivative-free optimizer.
using PerceptualHook = std::function<double(const Vec&, const Vec&)>;

enum class L2Form { mean, sum };

// Squared L2 difference; mean form divides by the dimension so thresholds
// carry across dimensions.
double l2_term(const Vec& x, const Vec& y, L2Form form = L2Form::mean);

// (|z|^2 - dim z)^2 — zero when the squared norm matches its expectation
// under a standard-normal prior.
double reg_term(const Vec& z);

double full_distance(const Vec& x, const Vec& x_hat,
                     const std::optional<Vec>& z, const DistanceWeights& w,
                     const PerceptualHook& hook = nullptr,
                     L2Form form = L2Form::mean);

// Gradient of lambda1 * L2(x, G(z)) + lambda3 * reg(z) with respect to z.
// Rejects lambda2 > 0: the hook is not differentiable by contract.
Vec full_distance_gradient_wrt_z(const Vec& x, const MlpNetwork& generator,
                                 const Vec& z, const DistanceWeights& w,
                                 L2Form form = L2Form::mean);

// Convenience: evaluates G(z) and the full distance in one call.
double full_distance_at_z(const Vec& x, const MlpNetwork& generator,
                          const Vec& z, const DistanceWeights& w,
                          const PerceptualHook& hook = nullptr,
                          L2Form form = L2Form::mean);

}  // namespace mia
