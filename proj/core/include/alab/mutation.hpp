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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "alab/image.hpp"
#include "alab/rng.hpp"

namespace alab {

enum class MutationKind {
  kGaussianNoise,
  kSaltPepper,
  kMultiplicativeNoise,
  kGaussianBlur,
  kBoxBlur,
  kMedianBlur,
  kBilateralFilter,
  kBrightness,
  kContrast,
};

std::string to_string(MutationKind kind);
MutationKind parse_mutation(std::string_view name);

// A mutation with the range its parameter is drawn from.
struct MutationOp {
  MutationKind kind;
  double low;
  double high;
};

// All nine operators with their default parameter ranges.
const std::vector<MutationOp>& default_mutation_ops();

Image apply_mutation(const Image& image, MutationKind kind, double parameter, Rng& rng);

// With probability rate applies one operator chosen uniformly from ops with
// a parameter drawn uniformly from its range; otherwise returns the input.
Image mutate(const Image& image, double rate, Rng& rng,
             std::span<const MutationOp> ops = default_mutation_ops());

}  // namespace alab
