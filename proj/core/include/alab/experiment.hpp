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
#include <memory>
#include <vector>

#include "alab/al_loop.hpp"
#include "alab/attack.hpp"
#include "alab/config.hpp"
#include "alab/ledger.hpp"
#include "alab/manifest.hpp"
#include "alab/oracle.hpp"

namespace alab {

// State shared by every run that uses the same dataset and seed: the
// pretrained model, its frozen snapshot, the OOD pool and the evaluation sets.
struct World {
  std::uint64_t seed = 0;
  int num_classes = 0;
  std::unique_ptr<ModelAdapter> pretrained;
  ScorerHandle snapshot;
  UnlabeledPool pool;
  std::size_t ood_skipped = 0;
  EvaluationSets eval;
  std::vector<Sample> id_train;
};

World prepare_world(const Dataset& dataset, const ExperimentConfig& config, std::uint64_t seed);

struct ScoreRow {
  int epoch;
  SampleId id;
  double score;
  bool selected;
};

struct RunArtifacts {
  RunRecord record;
  PoisonLedger ledger;
  LabeledSet labeled;
  UnlabeledPool pool;
  Oracle oracle;
  std::vector<Sample> poisons;
  std::vector<OptimizationTrace> traces;
  std::unique_ptr<ModelAdapter> final_model;
  std::vector<ScoreRow> scores;
};

// Builds poisons against the world's snapshot (unless the config is a clean
// control), injects them and runs the AL loop on a copy of the world's model.
RunArtifacts run_experiment(const World& world, const ExperimentConfig& config,
                            bool record_scores = false);

}  // namespace alab
