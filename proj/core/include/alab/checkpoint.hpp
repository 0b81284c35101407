// Copyright 2026 The ALAB Authors. All Rights Reserved.
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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace alab {

// Flat parameter file, all integers little-endian:
//   bytes 0..3   magic "ALAM"
//   u32          format version (1)
//   u32          backend tag length L, then L bytes of tag (ASCII)
//   u32          metadata count M, then M x u32 (backend-defined shape info)
//   u64          parameter count N, then N x f64 (IEEE-754, little-endian)
// Backends own the meaning of metadata and parameter order.
struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;

  std::string backend;
  std::vector<std::uint32_t> metadata;
  std::vector<double> parameters;

  bool operator==(const Checkpoint&) const = default;
};

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint);
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace alab
