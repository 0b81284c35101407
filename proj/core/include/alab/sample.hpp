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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "alab/image.hpp"

namespace alab {

struct SampleId {
  std::uint64_t value = 0;
  auto operator<=>(const SampleId&) const = default;
};

}  // namespace alab

template <>
struct std::hash<alab::SampleId> {
  std::size_t operator()(const alab::SampleId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};

namespace alab {

struct Sample {
  SampleId id;
  Image image;
  int true_label = 0;
  bool is_poisoned = false;
  // Set for poisons (the clean sample they were built from) and for
  // attacker-derived clean mutants.
  std::optional<SampleId> origin_id;

  bool operator==(const Sample&) const = default;
};

// Unlabeled pool with a consumed set. Samples keep their pool position for
// the whole run; consumption only moves ids into the consumed set.
class UnlabeledPool {
 public:
  UnlabeledPool() = default;
  explicit UnlabeledPool(std::vector<Sample> samples);

  std::size_t total() const { return samples_.size(); }
  std::size_t remaining_count() const { return samples_.size() - consumed_.size(); }
  std::size_t consumed_count() const { return consumed_.size(); }

  std::span<const Sample> all() const { return samples_; }
  // Remaining samples in pool order.
  std::vector<const Sample*> remaining() const;

  bool contains(SampleId id) const { return position_.contains(id); }
  bool is_consumed(SampleId id) const { return consumed_.contains(id); }
  const Sample& get(SampleId id) const;

  // Moves ids to the consumed set. Unknown or already-consumed ids are rejected
  // and leave the pool untouched.
  void consume(std::span<const SampleId> ids);

  // Swaps a remaining sample for a new one at the same position.
  void replace(SampleId old_id, Sample replacement);

 private:
  std::vector<Sample> samples_;
  std::unordered_map<SampleId, std::size_t> position_;
  std::unordered_set<SampleId> consumed_;
};

class Oracle;

// A sample with the label the oracle assigned to it. Only the oracle can
// create entries, so there is no path to attach any other label.
class LabeledEntry {
 public:
  const Sample& sample() const { return sample_; }
  int label() const { return label_; }

 private:
  friend class Oracle;
  LabeledEntry(Sample sample, int label) : sample_(std::move(sample)), label_(label) {}

  Sample sample_;
  int label_;
};

class LabeledSet {
 public:
  void add(LabeledEntry entry);
  void add(std::span<const LabeledEntry> entries);
  std::span<const LabeledEntry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(SampleId id) const { return ids_.contains(id); }

 private:
  std::vector<LabeledEntry> entries_;
  std::unordered_set<SampleId> ids_;
};

}  // namespace alab
