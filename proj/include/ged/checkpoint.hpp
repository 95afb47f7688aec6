// Copyright 2026 The ged Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Model checkpoint container, version 1. All integers little-endian.
//
//   magic    8 bytes   "GEDMODEL"
//   version  u32       1
//   config   u32 n, n bytes    ModelConfig::to_text()
//   vocab    u32 count, then count x (u32 n, n bytes)   tokens in id order
//   params   u32 count, then count x record:
//              u32 n, n bytes  parameter name
//              u32 rank, rank x u64 dims
//              numel x f64     IEEE-754 binary64 values, row-major
//   trailer  u64       FNV-1a 64 of every preceding byte
//
// Round-trips are bit-exact. See docs/checkpoint_format.md.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>

#include "ged/model.hpp"
#include "ged/vocabulary.hpp"

namespace ged {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  Model model;
  Vocabulary vocab;
};

std::string serialize_checkpoint(const Model& model, const Vocabulary& vocab);
/// Throws DataError for truncated, corrupt or inconsistent input.
Checkpoint deserialize_checkpoint(std::string_view bytes);

void save_checkpoint(const std::string& path, const Model& model, const Vocabulary& vocab);
Checkpoint load_checkpoint(const std::string& path);

std::uint64_t fnv1a64(std::span<const char> bytes);

}  // namespace ged
