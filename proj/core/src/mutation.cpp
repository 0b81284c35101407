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
#include "alab/mutation.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

#include "alab/errors.hpp"
#include "alab/imgops.hpp"

namespace alab {
namespace {

constexpr std::array<std::pair<MutationKind, const char*>, 9> kNames{{
    {MutationKind::kGaussianNoise, "gaussian_noise"},
    {MutationKind::kSaltPepper, "salt_pepper"},
    {MutationKind::kMultiplicativeNoise, "multiplicative_noise"},
    {MutationKind::kGaussianBlur, "gaussian_blur"},
    {MutationKind::kBoxBlur, "box_blur"},
    {MutationKind::kMedianBlur, "median_blur"},
    {MutationKind::kBilateralFilter, "bilateral_filter"},
    {MutationKind::kBrightness, "brightness"},
    {MutationKind::kContrast, "contrast"},
}};

constexpr int kBilateralRadius = 2;
constexpr double kBilateralSigmaSpace = 1.5;

}  // namespace

std::string to_string(MutationKind kind) {
  for (const auto& [k, name] : kNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

MutationKind parse_mutation(std::string_view name) {
  for (const auto& [k, n] : kNames) {
    if (name == n) return k;
  }
  throw InvalidArgument(fmt::format("unknown mutation '{}'", name));
}

const std::vector<MutationOp>& default_mutation_ops() {
  static const std::vector<MutationOp> ops{
      {MutationKind::kGaussianNoise, 2.0, 24.0},
      {MutationKind::kSaltPepper, 0.01, 0.08},
      {MutationKind::kMultiplicativeNoise, 0.05, 0.3},
      {MutationKind::kGaussianBlur, 0.3, 1.5},
      {MutationKind::kBoxBlur, 1.0, 2.0},
      {MutationKind::kMedianBlur, 1.0, 2.0},
      {MutationKind::kBilateralFilter, 10.0, 80.0},
      {MutationKind::kBrightness, -40.0, 40.0},
      {MutationKind::kContrast, 0.5, 1.5},
  };
  return ops;
}

Image apply_mutation(const Image& image, MutationKind kind, double parameter, Rng& rng) {
  switch (kind) {
    case MutationKind::kGaussianNoise: return imgops::gaussian_noise(image, parameter, rng);
    case MutationKind::kSaltPepper: return imgops::salt_pepper(image, parameter, rng);
    case MutationKind::kMultiplicativeNoise: return imgops::multiplicative_noise(image, parameter, rng);
    case MutationKind::kGaussianBlur: return imgops::gaussian_blur(image, parameter);
    case MutationKind::kBoxBlur: return imgops::box_blur(image, static_cast<int>(std::lround(parameter)));
    case MutationKind::kMedianBlur: return imgops::median_blur(image, static_cast<int>(std::lround(parameter)));
    case MutationKind::kBilateralFilter:
      return imgops::bilateral_filter(image, kBilateralRadius, parameter, kBilateralSigmaSpace);
    case MutationKind::kBrightness: return imgops::brightness(image, parameter);
    case MutationKind::kContrast: return imgops::contrast(image, parameter);
  }
  throw InvalidArgument("unknown mutation kind");
}

Image mutate(const Image& image, double rate, Rng& rng, std::span<const MutationOp> ops) {
  if (rate < 0.0 || rate > 1.0) throw InvalidArgument("mutation rate must be in [0, 1]");
  if (ops.empty()) throw InvalidArgument("mutation operator set is empty");
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (rate == 0.0 || !(coin(rng) < rate)) return image;
  std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
  const MutationOp& op = ops[pick(rng)];
  double parameter = op.low;
  if (op.high > op.low) parameter = std::uniform_real_distribution<double>(op.low, op.high)(rng);
  return apply_mutation(image, op.kind, parameter, rng);
}

}  // namespace alab
