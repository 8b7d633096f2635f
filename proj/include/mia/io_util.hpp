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
#include <string>
#include <vector>

namespace mia {

// Locale-independent double formatting with 17 significant digits
// (std::to_chars), so serialized values are byte-stable and round-trip.
std::string format_double(double value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
// Write to <path>.tmp then rename, so partially-written outputs never
// shadow completed ones (sweep resume relies on this).
void write_file_atomic(const std::string& path, const std::string& content);
bool file_exists(const std::string& path);
void ensure_directory(const std::string& path);

// FNV-1a over bytes; used for config hashes and dataset fingerprints.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(std::uint64_t h);

std::string join_path(const std::string& a, const std::string& b);

}  // namespace mia
