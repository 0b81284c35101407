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
#include "alab/corruption.hpp"

#include <array>

#include <fmt/format.h>

#include "alab/errors.hpp"
#include "alab/imgops.hpp"

namespace alab {
namespace {

struct Entry {
  CorruptionKind kind;
  const char* name;
  std::array<double, 5> severities;
};

// Noise and photometric magnitudes are on the 0-255 scale.
constexpr std::array<Entry, 8> kTable{{
    {CorruptionKind::kGaussianNoise, "gaussian_noise", {10.2, 15.3, 20.4, 22.95, 25.5}},
    {CorruptionKind::kShotNoise, "shot_noise", {500, 250, 100, 75, 50}},
    {CorruptionKind::kImpulseNoise, "impulse_noise", {0.01, 0.02, 0.03, 0.05, 0.07}},
    {CorruptionKind::kGaussianBlur, "gaussian_blur", {0.4, 0.6, 0.7, 0.8, 1.0}},
    {CorruptionKind::kBoxBlur, "box_blur", {1, 2, 3, 4, 5}},
    {CorruptionKind::kBrightness, "brightness", {12.75, 25.5, 38.25, 51.0, 76.5}},
    {CorruptionKind::kContrast, "contrast", {0.75, 0.5, 0.4, 0.3, 0.15}},
    {CorruptionKind::kPixelate, "pixelate", {0.95, 0.9, 0.85, 0.75, 0.65}},
}};

const Entry& entry(CorruptionKind kind) {
  for (const auto& e : kTable) {
    if (e.kind == kind) return e;
  }
  throw InvalidArgument("unknown corruption kind");
}

}  // namespace

CorruptionOp CorruptionOp::parse(std::string_view name, int severity) {
  if (severity < 1 || severity > 5) throw InvalidArgument(fmt::format("severity {} outside 1..5", severity));
  return CorruptionOp{parse_corruption(name), severity};
}

std::string to_string(CorruptionKind kind) { return entry(kind).name; }

CorruptionKind parse_corruption(std::string_view name) {
  for (const auto& e : kTable) {
    if (name == e.name) return e.kind;
  }
  throw InvalidArgument(fmt::format("unknown corruption '{}'", name));
}

std::vector<CorruptionKind> all_corruptions() {
  std::vector<CorruptionKind> kinds;
  for (const auto& e : kTable) kinds.push_back(e.kind);
  return kinds;
}

double corruption_parameter(CorruptionKind kind, int severity) {
  if (severity < 1 || severity > 5) throw InvalidArgument(fmt::format("severity {} outside 1..5", severity));
  return entry(kind).severities[static_cast<std::size_t>(severity - 1)];
}

Image apply_corruption(const Image& image, const CorruptionOp& op, Rng& rng) {
  return apply_corruption_parameter(image, op.kind, corruption_parameter(op.kind, op.severity), rng);
}

Image apply_corruption_parameter(const Image& image, CorruptionKind kind, double parameter, Rng& rng) {
  switch (kind) {
    case CorruptionKind::kGaussianNoise: return imgops::gaussian_noise(image, parameter, rng);
    case CorruptionKind::kShotNoise: return imgops::shot_noise(image, parameter, rng);
    case CorruptionKind::kImpulseNoise: return imgops::salt_pepper(image, parameter, rng);
    case CorruptionKind::kGaussianBlur: return imgops::gaussian_blur(image, parameter);
    case CorruptionKind::kBoxBlur: return imgops::box_blur(image, static_cast<int>(parameter));
    case CorruptionKind::kBrightness: return imgops::brightness(image, parameter);
    case CorruptionKind::kContrast: return imgops::contrast(image, parameter);
    case CorruptionKind::kPixelate: return imgops::pixelate(image, parameter);
  }
  throw InvalidArgument("unknown corruption kind");
}

}  // namespace alab
