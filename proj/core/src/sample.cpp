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
#include "alab/sample.hpp"

#include <fmt/format.h>

#include "alab/errors.hpp"

namespace alab {

UnlabeledPool::UnlabeledPool(std::vector<Sample> samples) : samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!position_.emplace(samples_[i].id, i).second) {
      throw InvalidArgument(fmt::format("duplicate sample id {} in pool", samples_[i].id.value));
    }
  }
}

std::vector<const Sample*> UnlabeledPool::remaining() const {
  std::vector<const Sample*> out;
  out.reserve(remaining_count());
  for (const auto& s : samples_) {
    if (!consumed_.contains(s.id)) out.push_back(&s);
  }
  return out;
}

const Sample& UnlabeledPool::get(SampleId id) const {
  auto it = position_.find(id);
  if (it == position_.end()) throw InvalidArgument(fmt::format("unknown sample id {}", id.value));
  return samples_[it->second];
}

void UnlabeledPool::consume(std::span<const SampleId> ids) {
  std::unordered_set<SampleId> batch;
  for (SampleId id : ids) {
    if (!position_.contains(id)) throw InvalidArgument(fmt::format("unknown sample id {}", id.value));
    if (consumed_.contains(id) || !batch.insert(id).second) {
      throw InvalidArgument(fmt::format("sample id {} selected twice", id.value));
    }
  }
  consumed_.insert(batch.begin(), batch.end());
}

void UnlabeledPool::replace(SampleId old_id, Sample replacement) {
  auto it = position_.find(old_id);
  if (it == position_.end()) throw InvalidArgument(fmt::format("unknown sample id {}", old_id.value));
  if (consumed_.contains(old_id)) throw InvalidArgument("cannot replace a consumed sample");
  if (replacement.id != old_id && position_.contains(replacement.id)) {
    throw InvalidArgument(fmt::format("replacement id {} already in pool", replacement.id.value));
  }
  std::size_t pos = it->second;
  position_.erase(it);
  position_.emplace(replacement.id, pos);
  samples_[pos] = std::move(replacement);
}

void LabeledSet::add(LabeledEntry entry) {
  if (!ids_.insert(entry.sample().id).second) {
    throw InvalidArgument(fmt::format("sample id {} labeled twice", entry.sample().id.value));
  }
  entries_.push_back(std::move(entry));
}

void LabeledSet::add(std::span<const LabeledEntry> entries) {
  for (const auto& e : entries) add(e);
}

}  // namespace alab
