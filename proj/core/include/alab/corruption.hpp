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

#include <string>
#include <string_view>
#include <vector>

#include "alab/image.hpp"
#include "alab/rng.hpp"

namespace alab {

// Parametric subset of common image corruptions, five severities each.
enum class CorruptionKind {
  kGaussianNoise,
  kShotNoise,
  kImpulseNoise,
  kGaussianBlur,
  kBoxBlur,
  kBrightness,
  kContrast,
  kPixelate,
};

struct CorruptionOp {
  CorruptionKind kind = CorruptionKind::kGaussianNoise;
  int severity = 1;  // 1..5

  // Rejects unknown names and severities outside 1..5.
  static CorruptionOp parse(std::string_view name, int severity);
};

std::string to_string(CorruptionKind kind);
CorruptionKind parse_corruption(std::string_view name);
std::vector<CorruptionKind> all_corruptions();

// Severity table lookup.
double corruption_parameter(CorruptionKind kind, int severity);

Image apply_corruption(const Image& image, const CorruptionOp& op, Rng& rng);
Image apply_corruption_parameter(const Image& image, CorruptionKind kind, double parameter,
                                 Rng& rng);

}  // namespace alab
