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
#include "alab/metrics.hpp"

#include <fmt/format.h>

#include "alab/errors.hpp"
#include "alab/triggers.hpp"

namespace alab {

double r_select(const RunRecord& run, int epoch) {
  if (epoch < 0 || static_cast<std::size_t>(epoch) >= run.epochs.size()) {
    throw InvalidArgument(fmt::format("epoch {} outside a run of {} epochs", epoch, run.epochs.size()));
  }
  if (run.poisons_injected == 0) throw UndefinedMetric("R_select is undefined without injected poisons");
  std::size_t cumulative = 0;
  for (int e = 0; e <= epoch; ++e) cumulative += run.epochs[static_cast<std::size_t>(e)].poisons_selected;
  return 100.0 * static_cast<double>(cumulative) / static_cast<double>(run.poisons_injected);
}

double attack_success_rate(const Scorer& model, std::span<const Sample> eval, const TriggerSpec& spec,
                           int target_class, bool exclude_target_class) {
  if (target_class < 0 || target_class >= model.num_classes()) {
    throw InvalidArgument(fmt::format("target class {} outside [0, {})", target_class, model.num_classes()));
  }
  std::size_t hits = 0;
  std::size_t total = 0;
  for (const auto& s : eval) {
    if (exclude_target_class && s.true_label == target_class) continue;
    const Image triggered = apply_test_trigger(s.image, spec);
    hits += model.predict_proba(triggered).argmax() == target_class ? 1 : 0;
    ++total;
  }
  if (total == 0) throw InvalidArgument("ASR evaluation set is empty");
  return 100.0 * static_cast<double>(hits) / static_cast<double>(total);
}

double accuracy(const Scorer& model, std::span<const Sample> eval) {
  if (eval.empty()) throw InvalidArgument("accuracy evaluation set is empty");
  std::size_t correct = 0;
  for (const auto& s : eval) correct += model.predict_proba(s.image).argmax() == s.true_label ? 1 : 0;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(eval.size());
}

}  // namespace alab
