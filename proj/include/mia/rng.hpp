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
#include <random>
#include <string>

#include "mia/linalg.hpp"

namespace mia {

// Seeded generator with explicit variate transforms. The std distributions
// are implementation-defined, so uniform/normal mappings are done by hand;
// only the engine (mt19937_64, fully specified by the standard) comes from
// <random>. Identical seed + call sequence gives an identical stream.
//
// Single-owner: hand an Rng off or fork a substream, never share one.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  static const char* algorithm() { return "mt19937_64/polar"; }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64();

  // Uniform in [0, 1), 53-bit resolution.
  double uniform();
  // Uniform integer in [0, n), rejection sampled.
  std::size_t uniform_index(std::size_t n);
  // Standard normal via the Marsaglia polar method (second variate cached).
  double normal();

  Vec normal_vec(std::size_t dim);

  // Deterministic substream derived from (seed, stream id). Used to give
  // independent jobs their own generators.
  Rng fork(std::uint64_t stream_id) const;

  // Fisher-Yates shuffle of [0, n) index permutation.
  std::vector<std::size_t> permutation(std::size_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_cached_ = false;
  double cached_ = 0.0;
};

// SplitMix64 finalizer; also used for deriving substream seeds and hashing.
std::uint64_t mix64(std::uint64_t x);

}  // namespace mia
