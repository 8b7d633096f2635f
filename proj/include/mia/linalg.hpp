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

#include "mia/error.hpp"

namespace mia {

// Dense column vector of 64-bit reals. All numeric kernels use fixed loop
// order so results are reproducible run to run.
using Vec = std::vector<double>;

// Dense row-major matrix.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

double dot(const Vec& a, const Vec& b);
double squared_norm(const Vec& a);
double norm(const Vec& a);

// y += alpha * x
void axpy(double alpha, const Vec& x, Vec& y);
void scale(Vec& x, double alpha);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);

// out = m * x
Vec matvec(const Mat& m, const Vec& x);
// out = m^T * x
Vec matvec_transposed(const Mat& m, const Vec& x);
// m += alpha * a * b^T
void add_outer(Mat& m, double alpha, const Vec& a, const Vec& b);

bool all_finite(const Vec& v);
bool all_finite(const Mat& m);

// Throws ErrorCode::numeric when a non-finite entry is found. `what` names
// the operation for the diagnostic.
void check_finite(const Vec& v, const std::string& what);
void check_finite(double x, const std::string& what);

}  // namespace mia
