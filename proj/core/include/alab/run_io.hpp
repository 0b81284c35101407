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

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "alab/al_loop.hpp"
#include "alab/config.hpp"
#include "alab/experiment.hpp"

namespace alab {

// Run directory layout:
//   config.json      experiment configuration and seed
//   epochs.csv       epoch,selected,poisons_selected,labeled_size,acc_id,acc_ood,asr,r_select
//   selections.csv   epoch,id  (selection order)
//   poisons.csv      poison_id,origin_id,replaced_id,label,trigger
//   traces.csv       candidate_id,generation,h_max
//   scores.csv       epoch,id,score,selected  (only when recorded)
//   model.alam       final model checkpoint
//   summary.json     run totals and final metrics
void write_run_directory(const std::filesystem::path& directory, const ExperimentConfig& config,
                         const RunArtifacts& artifacts);

std::string epochs_csv(const RunRecord& record);
std::string selections_csv(const RunRecord& record);

// The subset of a run directory that reporting needs.
struct RunSummary {
  std::filesystem::path directory;
  nlohmann::json config;
  std::uint64_t seed = 0;
  std::vector<double> asr;
  std::vector<double> acc_id;
  std::vector<double> acc_ood;
  std::vector<double> r_select;  // empty for clean controls
};

RunSummary read_run_summary(const std::filesystem::path& directory);

}  // namespace alab
