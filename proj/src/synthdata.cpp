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

#include "mia/synthdata.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "mia/io_util.hpp"
#include "mia/rng.hpp"

namespace mia {

std::string dataset_kind_name(DatasetKind k) {
  switch (k) {
    case DatasetKind::gaussian_mixture: return "gaussian_mixture";
    case DatasetKind::binary_records: return "binary_records";
    case DatasetKind::trace_vectors: return "trace_vectors";
  }
  fail(ErrorCode::internal, "unknown dataset kind");
}

DatasetKind dataset_kind_from_name(const std::string& name) {
  if (name == "gaussian_mixture") return DatasetKind::gaussian_mixture;
  if (name == "binary_records") return DatasetKind::binary_records;
  if (name == "trace_vectors") return DatasetKind::trace_vectors;
  fail(ErrorCode::config, "unknown dataset kind: " + name);
}

std::string split_mode_name(SplitMode m) {
  return m == SplitMode::random ? "random" : "group_based";
}

SplitMode split_mode_from_name(const std::string& name) {
  if (name == "random") return SplitMode::random;
  if (name == "group_based") return SplitMode::group_based;
  fail(ErrorCode::config, "unknown split mode: " + name);
}

void DatasetSpec::validate() const {
  require(dim >= 1, ErrorCode::config, "dataset.dim must be >= 1");
  require(n_samples >= 1, ErrorCode::config, "dataset.n_samples must be >= 1");
  require(n_groups >= 1 && n_groups <= n_samples, ErrorCode::config,
          "dataset.n_groups must be in [1, n_samples]");
  if (kind == DatasetKind::trace_vectors) {
    require(trace_knots >= 2, ErrorCode::config,
            "dataset.trace_knots must be >= 2");
  }
}

namespace {

std::vector<LabeledSample> make_gaussian_mixture(const DatasetSpec& spec,
                                                 Rng& rng) {
  std::vector<Vec> centers(spec.n_groups);
  for (int g = 0; g < spec.n_groups; ++g) {
    centers[g] = rng.normal_vec(spec.dim);
    scale(centers[g], spec.mixture_radius);
  }
  std::vector<LabeledSample> out(spec.n_samples);
  for (int i = 0; i < spec.n_samples; ++i) {
    const int g = i % spec.n_groups;
    Vec x = rng.normal_vec(spec.dim);
    scale(x, spec.mixture_spread);
    axpy(1.0, centers[g], x);
    out[i] = {std::move(x), g, std::nullopt};
  }
  return out;
}

std::vector<LabeledSample> make_binary_records(const DatasetSpec& spec,
                                               Rng& rng) {
  // One Bernoulli activation pattern per group.
  std::vector<Vec> patterns(spec.n_groups, Vec(spec.dim));
  for (int g = 0; g < spec.n_groups; ++g)
    for (int j = 0; j < spec.dim; ++j)
      patterns[g][j] = 0.1 + 0.8 * rng.uniform();
  std::vector<LabeledSample> out(spec.n_samples);
  for (int i = 0; i < spec.n_samples; ++i) {
    const int g = i % spec.n_groups;
    Vec x(spec.dim);
    for (int j = 0; j < spec.dim; ++j)
      x[j] = rng.uniform() < patterns[g][j] ? 1.0 : 0.0;
    out[i] = {std::move(x), g, std::nullopt};
  }
  return out;
}

std::vector<LabeledSample> make_trace_vectors(const DatasetSpec& spec,
                                              Rng& rng) {
  // Per-group knot sets laid down by a random walk; each sample jitters the
  // knots and linearly interpolates them over `dim` positions.
  const int knots = spec.trace_knots;
  std::vector<Vec> group_knots(spec.n_groups, Vec(knots));
  for (int g = 0; g < spec.n_groups; ++g) {
    double level = 2.0 * rng.normal();
    for (int k = 0; k < knots; ++k) {
      level += rng.normal();
      group_knots[g][k] = level;
    }
  }
  std::vector<LabeledSample> out(spec.n_samples);
  for (int i = 0; i < spec.n_samples; ++i) {
    const int g = i % spec.n_groups;
    Vec k = group_knots[g];
    for (int q = 0; q < knots; ++q) k[q] += spec.trace_jitter * rng.normal();
    Vec x(spec.dim);
    for (int j = 0; j < spec.dim; ++j) {
      const double pos = spec.dim == 1
                             ? 0.0
                             : static_cast<double>(j) * (knots - 1) /
                                   static_cast<double>(spec.dim - 1);
      const int lo = std::min(static_cast<int>(pos), knots - 2);
      const double frac = pos - lo;
      x[j] = (1.0 - frac) * k[lo] + frac * k[lo + 1] +
             spec.trace_noise * rng.normal();
    }
    out[i] = {std::move(x), g, std::nullopt};
  }
  // Zero-mean normalization per coordinate.
  Vec mean(spec.dim, 0.0);
  for (const LabeledSample& s : out) axpy(1.0, s.x, mean);
  scale(mean, 1.0 / static_cast<double>(out.size()));
  for (LabeledSample& s : out) axpy(-1.0, mean, s.x);
  return out;
}

}  // namespace

std::vector<LabeledSample> generate_dataset(const DatasetSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  switch (spec.kind) {
    case DatasetKind::gaussian_mixture: return make_gaussian_mixture(spec, rng);
    case DatasetKind::binary_records: return make_binary_records(spec, rng);
    case DatasetKind::trace_vectors: return make_trace_vectors(spec, rng);
  }
  fail(ErrorCode::internal, "unknown dataset kind");
}

Split split_train_holdout(const std::vector<LabeledSample>& data,
                          int train_size, SplitMode mode, std::uint64_t seed) {
  require(train_size >= 1, ErrorCode::invalid_argument,
          "split: train_size must be >= 1");
  require(static_cast<std::size_t>(train_size) < data.size(),
          ErrorCode::invalid_argument,
          "split: train_size must be smaller than the dataset");
  Rng rng(mix64(seed ^ 0x7f4a7c15ULL));
  Split split;

  if (mode == SplitMode::random) {
    const auto perm = rng.permutation(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      if (i < static_cast<std::size_t>(train_size))
        split.train.push_back(data[perm[i]]);
      else
        split.holdout.push_back(data[perm[i]]);
    }
    return split;
  }

  // group_based: whole groups go to one side; the boundary group is
  // truncated so |train| == train_size exactly.
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < data.size(); ++i)
    groups[data[i].group_id].push_back(i);
  std::vector<int> group_ids;
  group_ids.reserve(groups.size());
  for (const auto& [gid, _] : groups) group_ids.push_back(gid);
  const auto gperm = rng.permutation(group_ids.size());

  std::size_t taken = 0;
  for (std::size_t gi = 0; gi < gperm.size(); ++gi) {
    const int gid = group_ids[gperm[gi]];
    const auto& members = groups[gid];
    if (taken >= static_cast<std::size_t>(train_size)) {
      for (std::size_t idx : members) split.holdout.push_back(data[idx]);
      continue;
    }
    const std::size_t remaining = train_size - taken;
    if (members.size() <= remaining) {
      for (std::size_t idx : members) split.train.push_back(data[idx]);
      taken += members.size();
    } else {
      auto mperm = rng.permutation(members.size());
      for (std::size_t mi = 0; mi < members.size(); ++mi) {
        if (mi < remaining)
          split.train.push_back(data[members[mperm[mi]]]);
        else
          split.holdout.push_back(data[members[mperm[mi]]]);
      }
      split.straddling_group = gid;
      taken = train_size;
    }
  }
  return split;
}

std::string dataset_to_csv(const std::vector<LabeledSample>& data) {
  std::string out = "group_id";
  const std::size_t dim = data.empty() ? 0 : data.front().x.size();
  for (std::size_t j = 0; j < dim; ++j) out += ",x" + std::to_string(j);
  out += '\n';
  for (const LabeledSample& s : data) {
    out += std::to_string(s.group_id);
    for (double v : s.x) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

std::vector<LabeledSample> dataset_from_csv(const std::string& text) {
  std::vector<LabeledSample> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    LabeledSample s;
    std::istringstream ls(line);
    std::string cell;
    bool first = true;
    while (std::getline(ls, cell, ',')) {
      if (first) {
        s.group_id = std::stoi(cell);
        first = false;
      } else {
        s.x.push_back(std::stod(cell));
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace mia
