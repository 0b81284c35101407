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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "alab/corruption.hpp"
#include "alab/model.hpp"
#include "alab/sample.hpp"

namespace alab {

struct OodPoolOptions {
  std::vector<CorruptionKind> corruptions = all_corruptions();
  int max_tries = 50;
  std::uint64_t seed = 0;
};

// Each try draws a corruption kind and a severity uniformly and keeps the
// first variant the model misclassifies. Absent after max_tries failures.
std::optional<Sample> corrupt_until_misclassified(const Sample& sample, const Scorer& model,
                                                  std::span<const CorruptionKind> corruptions,
                                                  int max_tries, Rng& rng);

struct OodPoolBuild {
  UnlabeledPool pool;
  std::size_t skipped = 0;
};

// Corrupts every source sample (rng stream per sample id) and admits the
// misclassified variants. Sources flagged precorrupted skip corruption but
// still pass through the misclassification gate. precorrupted may be empty.
// Throws EmptyPoolError when nothing is admitted.
OodPoolBuild build_ood_pool(std::span<const Sample> source, const Scorer& model,
                            const OodPoolOptions& options,
                            const std::vector<bool>& precorrupted = {});

// One random corruption per sample without a gate; builds the fresh OOD
// evaluation set.
std::vector<Sample> corrupt_fresh(std::span<const Sample> source,
                                  std::span<const CorruptionKind> corruptions,
                                  std::uint64_t seed);

}  // namespace alab
