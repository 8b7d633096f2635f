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
#include <optional>
#include <string>
#include <vector>

#include "mia/linalg.hpp"

namespace mia {

struct LabeledSample {
  Vec x;
  int group_id = 0;
  std::optional<bool> membership;
};

enum class DatasetKind { gaussian_mixture, binary_records, trace_vectors };

std::string dataset_kind_name(DatasetKind k);
DatasetKind dataset_kind_from_name(const std::string& name);

// Desk-scale analogs of three data modalities: a Gaussian mixture
// (continuous features, groups = mixture components), binary records drawn
// from per-group Bernoulli activation patterns, and zero-mean normalized
// piecewise-linear trace vectors built from per-group knot sets.
struct DatasetSpec {
  DatasetKind kind = DatasetKind::gaussian_mixture;
  int dim = 8;
  int n_samples = 512;
  int n_groups = 8;
  std::uint64_t seed = 1;

  // gaussian_mixture
  double mixture_spread = 0.25;
  double mixture_radius = 2.0;
  // trace_vectors
  int trace_knots = 6;
  double trace_noise = 0.05;
  double trace_jitter = 0.25;

  void validate() const;
};

std::vector<LabeledSample> generate_dataset(const DatasetSpec& spec);

enum class SplitMode { random, group_based };

std::string split_mode_name(SplitMode m);
SplitMode split_mode_from_name(const std::string& name);

struct Split {
  std::vector<LabeledSample> train;
  std::vector<LabeledSample> holdout;
  // Group cut in half to hit train_size exactly (group_based mode only).
  // Its holdout members are excluded from query sets.
  std::optional<int> straddling_group;
};

Split split_train_holdout(const std::vector<LabeledSample>& data,
                          int train_size, SplitMode mode, std::uint64_t seed);

// CSV with group_id first, then the coordinates.
std::string dataset_to_csv(const std::vector<LabeledSample>& data);
std::vector<LabeledSample> dataset_from_csv(const std::string& text);

}  // namespace mia
