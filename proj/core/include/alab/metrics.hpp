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

#include "alab/al_loop.hpp"
#include "alab/model.hpp"
#include "alab/sample.hpp"
#include "alab/trigger_spec.hpp"

namespace alab {

// 100 * poisons selected through epoch / poisons injected.
double r_select(const RunRecord& run, int epoch);

// 100 * fraction of test-triggered evaluation images predicted as target.
// With exclude_target_class, target-class images are dropped first.
double attack_success_rate(const Scorer& model, std::span<const Sample> eval,
                           const TriggerSpec& spec, int target_class,
                           bool exclude_target_class = false);

// 100 * fraction with argmax equal to the true label.
double accuracy(const Scorer& model, std::span<const Sample> eval);

}  // namespace alab
