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
#include "alab/ledger.hpp"

#include <fmt/format.h>

#include "alab/errors.hpp"

namespace alab {

SampleId PoisonLedger::register_poison(const Sample& clean, const TriggerSpec& spec) {
  if (clean.is_poisoned) throw InvalidArgument("cannot poison an already poisoned sample");
  for (const auto& [id, entry] : entries_) {
    if (entry.clean.id == clean.id && entry.spec == spec) {
      throw InvalidArgument(
          fmt::format("sample {} already registered with trigger {}", clean.id.value, describe(spec)));
    }
  }
  SampleId id = allocate_id();
  entries_.emplace(id, LedgerEntry{clean, spec, std::nullopt});
  return id;
}

void PoisonLedger::set_replaced(SampleId poison_id, SampleId replaced_id) {
  auto it = entries_.find(poison_id);
  if (it == entries_.end()) throw InvalidArgument(fmt::format("unknown poison id {}", poison_id.value));
  it->second.replaced_id = replaced_id;
}

const LedgerEntry& PoisonLedger::lookup(SampleId poison_id) const {
  auto it = entries_.find(poison_id);
  if (it == entries_.end()) {
    throw InvalidArgument(fmt::format("sample {} is not in the poison ledger", poison_id.value));
  }
  return it->second;
}

Sample make_poisoned_sample(const Sample& clean, const Image& triggered, const TriggerSpec& spec,
                            PoisonLedger& ledger) {
  if (triggered.shape() != clean.image.shape()) {
    throw InvalidArgument(fmt::format("triggered image shape {} differs from clean shape {}",
                                      triggered.shape().to_string(), clean.image.shape().to_string()));
  }
  SampleId id = ledger.register_poison(clean, spec);
  return Sample{id, triggered, clean.true_label, true, clean.id};
}

std::size_t count_clean_label_violations(std::span<const Sample> samples, const PoisonLedger& ledger) {
  std::size_t violations = 0;
  for (const auto& s : samples) {
    if (!s.is_poisoned) continue;
    if (!ledger.contains(s.id) || !s.origin_id) {
      ++violations;
      continue;
    }
    const auto& entry = ledger.lookup(s.id);
    if (entry.clean.true_label != s.true_label || entry.clean.id != *s.origin_id) ++violations;
  }
  return violations;
}

}  // namespace alab
