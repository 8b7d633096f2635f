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
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "mia/linalg.hpp"

namespace mia {

using Objective = std::function<double(const Vec&)>;
using GradientFn = std::function<Vec(const Vec&)>;

struct PowellConfig {
  int max_iters = 10;
  double line_search_tol = 1e-6;
  // Direction set resets to coordinate axes every this many iterations;
  // 0 means "every dim(z) iterations".
  int direction_reset_period = 0;
};

struct LbfgsConfig {
  int max_iters = 1000;
  int memory = 10;
  double wolfe_c1 = 1e-4;
  double wolfe_c2 = 0.9;
  double grad_tol = 1e-8;

  void validate() const;
};

enum class TerminationReason { grad_tol, max_iters, line_search_failure, no_improvement };

const char* termination_reason_name(TerminationReason r);

struct OptimizationTrace {
  // (iteration, objective value) per accepted iterate, starting at iteration 0.
  std::vector<std::pair<int, double>> iterates;
  // Matching points, same length as `iterates`.
  std::vector<Vec> points;
  Vec final_point;
  double final_value = 0.0;
  bool converged = false;
  TerminationReason reason = TerminationReason::max_iters;
  long function_evals = 0;
  long gradient_evals = 0;
};

// Derivative-free minimization by conjugate directions: per iteration one
// Brent line minimization along each direction, then along the net
// displacement, replacing the direction of largest decrease. Only calls
// `objective`; there is no gradient parameter to call.
OptimizationTrace powell_minimize(const Objective& objective, Vec z0,
                                  const PowellConfig& cfg);

// Limited-memory BFGS with a strong Wolfe line search (bracket then bounded
// bisection zoom). On a failed line search it retries once along steepest
// descent, then gives up with line_search_failure.
OptimizationTrace lbfgs_minimize(const Objective& objective,
                                 const GradientFn& gradient, Vec z0,
                                 const LbfgsConfig& cfg);

// H*grad via the two-loop recursion over (s, y) pairs, oldest first, with
// initial Hessian h0_scale * I. Exposed so the quasi-Newton direction can be
// checked against a direct solve.
Vec lbfgs_two_loop(const std::vector<std::pair<Vec, Vec>>& history,
                   const Vec& grad, double h0_scale);

struct AdamState {
  Vec m;
  Vec v;
  std::int64_t t = 0;
};

void adam_step(Vec& params, const Vec& grads, AdamState& state, double lr,
               double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

struct RmspropState {
  Vec v;
};

void rmsprop_step(Vec& params, const Vec& grads, RmspropState& state,
                  double lr, double decay = 0.9, double eps = 1e-8);

// CSV dump with header "iteration,objective".
std::string trace_to_csv(const OptimizationTrace& trace);
void trace_save_csv(const OptimizationTrace& trace, const std::string& path);

}  // namespace mia
