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
#include <map>
#include <optional>
#include <vector>

#include "alab/sample.hpp"
#include "alab/trigger_spec.hpp"

namespace alab {

struct LedgerEntry {
  Sample clean;
  TriggerSpec spec;
  // Pool sample the poison replaced, if it was injected.
  std::optional<SampleId> replaced_id;
};

// Registry of every poisoned sample and the clean original it came from.
// Also hands out fresh ids for attacker-created samples.
class PoisonLedger {
 public:
  static constexpr std::uint64_t kDefaultFirstId = 1'000'000'000ULL;

  explicit PoisonLedger(std::uint64_t first_id = kDefaultFirstId) : next_id_(first_id) {}

  SampleId allocate_id() { return SampleId{next_id_++}; }

  // Registers a poison built from clean and returns its ledger id.
  SampleId register_poison(const Sample& clean, const TriggerSpec& spec);
  void set_replaced(SampleId poison_id, SampleId replaced_id);

  const LedgerEntry& lookup(SampleId poison_id) const;
  bool contains(SampleId poison_id) const { return entries_.contains(poison_id); }
  std::size_t size() const { return entries_.size(); }
  const std::map<SampleId, LedgerEntry>& entries() const { return entries_; }

 private:
  std::uint64_t next_id_;
  std::map<SampleId, LedgerEntry> entries_;
};

// Wraps a triggered image as a poisoned sample carrying clean's label and
// records the pair in the ledger.
Sample make_poisoned_sample(const Sample& clean, const Image& triggered,
                            const TriggerSpec& spec, PoisonLedger& ledger);

// Counts poisoned samples whose label differs from their ledger original or
// that have no ledger entry. Zero for every valid run.
std::size_t count_clean_label_violations(std::span<const Sample> samples,
                                         const PoisonLedger& ledger);

}  // namespace alab
