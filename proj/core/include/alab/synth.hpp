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

#include "alab/image.hpp"
#include "alab/manifest.hpp"

namespace alab {

// Gaussian blobs around per-class mean patterns. Labels cycle 0..K-1 inside
// each split, so splits are balanced when their size is a multiple of K.
struct BlobDatasetSpec {
  int classes = 3;
  Shape shape{16, 16, 1};
  double noise_sigma = 10.0;
  // Mean-pattern pixels are drawn uniformly from [pattern_low, pattern_high].
  int pattern_low = 40;
  int pattern_high = 215;
  int train_count = 600;
  int test_count = 300;
  int pool_source_count = 1000;
  int ood_test_count = 300;
  std::uint64_t seed = 0;

  void validate() const;
};

// Mean patterns used by generate(); pairwise L1 distance must exceed
// 4 * sigma * h * w * c.
std::vector<Image> class_mean_patterns(const BlobDatasetSpec& spec);

// Ids run 0..N-1 across the splits in order train, test, pool source, ood test.
Dataset generate(const BlobDatasetSpec& spec);

}  // namespace alab
