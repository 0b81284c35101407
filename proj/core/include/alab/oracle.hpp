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
#include <unordered_map>
#include <vector>

#include "alab/sample.hpp"

namespace alab {

// Ground-truth labelling authority. Answers come only from the true_label
// recorded when a sample is registered.
class Oracle {
 public:
  Oracle() = default;
  explicit Oracle(std::span<const Sample> samples);

  void register_sample(const Sample& sample);
  void register_samples(std::span<const Sample> samples);

  bool knows(SampleId id) const { return labels_.contains(id); }
  int query(SampleId id) const;
  LabeledEntry label(const Sample& sample) const;

 private:
  std::unordered_map<SampleId, int> labels_;
};

// Entries whose label disagrees with the oracle or with the sample's own
// ground truth.
std::size_t count_label_mismatches(const LabeledSet& labeled, const Oracle& oracle);

}  // namespace alab
