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
#include "alab/oracle.hpp"

#include <fmt/format.h>

#include "alab/errors.hpp"

namespace alab {

Oracle::Oracle(std::span<const Sample> samples) { register_samples(samples); }

void Oracle::register_sample(const Sample& sample) {
  auto [it, inserted] = labels_.emplace(sample.id, sample.true_label);
  if (!inserted && it->second != sample.true_label) {
    throw InvalidArgument(fmt::format("sample {} re-registered with a different label", sample.id.value));
  }
}

void Oracle::register_samples(std::span<const Sample> samples) {
  for (const auto& s : samples) register_sample(s);
}

int Oracle::query(SampleId id) const {
  auto it = labels_.find(id);
  if (it == labels_.end()) throw InvalidArgument(fmt::format("oracle has no record of sample {}", id.value));
  return it->second;
}

LabeledEntry Oracle::label(const Sample& sample) const {
  const int answer = query(sample.id);
  if (answer != sample.true_label) {
    throw InvalidArgument(fmt::format("sample {} carries a label the oracle never issued", sample.id.value));
  }
  return LabeledEntry(sample, answer);
}

std::size_t count_label_mismatches(const LabeledSet& labeled, const Oracle& oracle) {
  std::size_t mismatches = 0;
  for (const auto& e : labeled.entries()) {
    if (!oracle.knows(e.sample().id) || oracle.query(e.sample().id) != e.label() ||
        e.sample().true_label != e.label()) {
      ++mismatches;
    }
  }
  return mismatches;
}

}  // namespace alab
