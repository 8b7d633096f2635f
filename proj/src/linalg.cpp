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

#include "mia/linalg.hpp"

#include <cmath>

namespace mia {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::capability: return "capability";
    case ErrorCode::dimension: return "dimension";
    case ErrorCode::numeric: return "numeric";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

double dot(const Vec& a, const Vec& b) {
  require(a.size() == b.size(), ErrorCode::dimension, "dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double squared_norm(const Vec& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return s;
}

double norm(const Vec& a) { return std::sqrt(squared_norm(a)); }

void axpy(double alpha, const Vec& x, Vec& y) {
  require(x.size() == y.size(), ErrorCode::dimension, "axpy: size mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(Vec& x, double alpha) {
  for (double& v : x) v *= alpha;
}

Vec add(const Vec& a, const Vec& b) {
  require(a.size() == b.size(), ErrorCode::dimension, "add: size mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vec sub(const Vec& a, const Vec& b) {
  require(a.size() == b.size(), ErrorCode::dimension, "sub: size mismatch");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vec matvec(const Mat& m, const Vec& x) {
  require(m.cols == x.size(), ErrorCode::dimension, "matvec: size mismatch");
  Vec out(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    double s = 0.0;
    const double* row = m.data.data() + i * m.cols;
    for (std::size_t j = 0; j < m.cols; ++j) s += row[j] * x[j];
    out[i] = s;
  }
  return out;
}

Vec matvec_transposed(const Mat& m, const Vec& x) {
  require(m.rows == x.size(), ErrorCode::dimension,
          "matvec_transposed: size mismatch");
  Vec out(m.cols, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    const double* row = m.data.data() + i * m.cols;
    const double xi = x[i];
    for (std::size_t j = 0; j < m.cols; ++j) out[j] += row[j] * xi;
  }
  return out;
}

void add_outer(Mat& m, double alpha, const Vec& a, const Vec& b) {
  require(m.rows == a.size() && m.cols == b.size(), ErrorCode::dimension,
          "add_outer: size mismatch");
  for (std::size_t i = 0; i < m.rows; ++i) {
    double* row = m.data.data() + i * m.cols;
    const double ai = alpha * a[i];
    for (std::size_t j = 0; j < m.cols; ++j) row[j] += ai * b[j];
  }
}

bool all_finite(const Vec& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

bool all_finite(const Mat& m) {
  for (double x : m.data) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void check_finite(const Vec& v, const std::string& what) {
  if (!all_finite(v)) fail(ErrorCode::numeric, what + ": non-finite value");
}

void check_finite(double x, const std::string& what) {
  if (!std::isfinite(x)) fail(ErrorCode::numeric, what + ": non-finite value");
}

}  // namespace mia
