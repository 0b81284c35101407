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

#include "alab/experiment.hpp"
#include "alab/synth.hpp"

namespace alab::testing {

// Default synthetic dataset, shared across tests in one binary.
inline const Dataset& default_dataset() {
  static const Dataset dataset = generate(BlobDatasetSpec{});
  return dataset;
}

inline World default_world(std::uint64_t seed, const ExperimentConfig& config = {}) {
  return prepare_world(default_dataset(), config, seed);
}

}  // namespace alab::testing
