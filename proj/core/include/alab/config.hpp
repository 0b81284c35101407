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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "alab/acquisition.hpp"
#include "alab/attack.hpp"
#include "alab/reference_classifier.hpp"
#include "alab/trigger_spec.hpp"

namespace alab {

// Where the clean OOD evaluation set comes from: ood_test images with one
// fresh random corruption each, or ood_test passed through the same
// corrupt-until-misclassified gate as the pool.
enum class OodEvalProtocol { kFresh, kHeldOut };

struct ExperimentConfig {
  double budget_fraction = 0.10;
  double per_epoch_fraction = 0.01;
  double poisoning_ratio = 0.01;
  Acquisition acquisition = Acquisition::kEntropy;
  int target_class = 0;
  GAConfig ga;
  int ga_generations = 10;
  TriggerSpec trigger = SigTrigger{};
  std::vector<std::uint64_t> seeds{0, 1, 2};
  bool forced_selection = false;
  // False gives the clean-control run.
  bool inject_poisons = true;
  int max_corruption_tries = 50;
  Acquisition attacker_metric = Acquisition::kEntropy;
  bool exclude_target_class = false;
  OodEvalProtocol ood_eval = OodEvalProtocol::kFresh;

  TrainingOptions training;
  int pretrain_epochs = 30;
  // Keep the pretraining set in the incremental training data.
  bool replay_initial = false;

  void validate() const;
  // floor(budget_fraction / per_epoch_fraction), tolerant to rounding.
  int epochs() const;
};

void to_json(nlohmann::json& j, const ExperimentConfig& config);
void from_json(const nlohmann::json& j, ExperimentConfig& config);
void to_json(nlohmann::json& j, const GAConfig& config);
void from_json(const nlohmann::json& j, GAConfig& config);

std::string to_string(OodEvalProtocol protocol);

}  // namespace alab
