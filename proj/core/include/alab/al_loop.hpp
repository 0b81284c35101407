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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "alab/acquisition.hpp"
#include "alab/config.hpp"
#include "alab/model.hpp"
#include "alab/oracle.hpp"
#include "alab/sample.hpp"

namespace alab {

struct EpochRecord {
  int epoch = 0;
  std::vector<SampleId> selected;
  std::size_t poisons_selected = 0;
  std::size_t labeled_size = 0;
  double acc_id = 0.0;
  double acc_ood = 0.0;
  double asr = 0.0;
  // Unset when no poisons were injected.
  std::optional<double> r_select_cumulative;
};

struct RunRecord {
  std::uint64_t seed = 0;
  std::size_t pool_size = 0;
  std::size_t poisons_injected = 0;
  std::size_t initial_labeled = 0;
  std::size_t attacker_labels_queried = 0;
  std::size_t ood_skipped = 0;
  std::vector<EpochRecord> epochs;
};

struct EvaluationSets {
  std::vector<Sample> id_test;
  std::vector<Sample> ood_test;
};

// Labels per epoch: floor(budget_fraction * pool) spread over
// config.epochs() batches, earlier batches taking the remainder.
struct BudgetPlan {
  std::size_t total = 0;
  std::vector<std::size_t> batch_sizes;
};
BudgetPlan plan_budget(std::size_t pool_size, double budget_fraction, double per_epoch_fraction);

// Trains on the ID split and returns a frozen snapshot. With retain, the
// split stays in the model's incremental training data.
ScorerHandle pretrain(ModelAdapter& model, std::span<const Sample> id_train, int epochs,
                      bool retain = false);

// All poison ids plus the top-(k - |poisons|) other remaining ids under the
// acquisition, consumed from the pool.
std::vector<SampleId> forced_selection_epoch0(UnlabeledPool& pool,
                                              std::span<const SampleId> poison_ids,
                                              const Scorer& model, Acquisition acquisition,
                                              std::size_t k, Rng& rng,
                                              std::vector<AcquisitionScore>* audit = nullptr);

// Receives each epoch's full score list and selection.
using ScoreSink = std::function<void(int epoch, std::span<const AcquisitionScore> scores,
                                     std::span<const SampleId> selected)>;

// Fixed-budget loop: select, label via the oracle, fit_incremental, then
// record post-retrain metrics. labeled may already hold the initial set.
RunRecord run_al(const ExperimentConfig& config, std::uint64_t seed, UnlabeledPool& pool,
                 ModelAdapter& model, const Oracle& oracle, const EvaluationSets& eval,
                 std::span<const SampleId> poison_ids, LabeledSet& labeled,
                 const ScoreSink& sink = {});

}  // namespace alab
