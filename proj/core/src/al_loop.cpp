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
#include "alab/al_loop.hpp"

#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

#include "alab/errors.hpp"
#include "alab/metrics.hpp"

namespace alab {

BudgetPlan plan_budget(std::size_t pool_size, double budget_fraction, double per_epoch_fraction) {
  if (!(per_epoch_fraction > 0.0 && per_epoch_fraction <= budget_fraction && budget_fraction <= 1.0)) {
    throw InvalidArgument("need 0 < per_epoch_fraction <= budget_fraction <= 1");
  }
  const auto epochs = static_cast<std::size_t>(std::floor(budget_fraction / per_epoch_fraction + 1e-9));
  BudgetPlan plan;
  plan.total = static_cast<std::size_t>(std::floor(budget_fraction * static_cast<double>(pool_size) + 1e-9));
  if (plan.total < epochs) {
    throw InvalidArgument(fmt::format("pool of {} is too small for a {}-epoch budget of {} labels", pool_size,
                                      epochs, plan.total));
  }
  for (std::size_t e = 0; e < epochs; ++e) {
    plan.batch_sizes.push_back(plan.total / epochs + (e < plan.total % epochs ? 1 : 0));
  }
  return plan;
}

ScorerHandle pretrain(ModelAdapter& model, std::span<const Sample> id_train, int epochs, bool retain) {
  if (id_train.empty()) throw InvalidArgument("ID training split is empty");
  Oracle oracle(id_train);
  std::vector<LabeledEntry> entries;
  entries.reserve(id_train.size());
  for (const auto& s : id_train) entries.push_back(oracle.label(s));
  model.train(entries, epochs);
  if (retain) model.remember(entries);
  return model.snapshot();
}

std::vector<SampleId> forced_selection_epoch0(UnlabeledPool& pool, std::span<const SampleId> poison_ids,
                                              const Scorer& model, Acquisition acquisition, std::size_t k,
                                              Rng& rng, std::vector<AcquisitionScore>* audit) {
  if (poison_ids.size() > k) {
    throw InvalidArgument(fmt::format("{} poisons do not fit a batch of {}", poison_ids.size(), k));
  }
  if (k > pool.remaining_count()) throw InvalidArgument("batch exceeds the remaining pool");
  pool.consume(poison_ids);
  std::vector<SampleId> selected(poison_ids.begin(), poison_ids.end());
  auto rest = select_batch(pool, model, acquisition, k - poison_ids.size(), rng, audit);
  selected.insert(selected.end(), rest.begin(), rest.end());
  return selected;
}

RunRecord run_al(const ExperimentConfig& config, std::uint64_t seed, UnlabeledPool& pool, ModelAdapter& model,
                 const Oracle& oracle, const EvaluationSets& eval, std::span<const SampleId> poison_ids,
                 LabeledSet& labeled, const ScoreSink& sink) {
  config.validate();
  const BudgetPlan plan = plan_budget(pool.remaining_count(), config.budget_fraction, config.per_epoch_fraction);
  const std::unordered_set<SampleId> poisons(poison_ids.begin(), poison_ids.end());

  RunRecord record;
  record.seed = seed;
  record.pool_size = pool.total();
  record.poisons_injected = poisons.size();
  record.initial_labeled = labeled.size();

  std::size_t cumulative = 0;
  std::vector<AcquisitionScore> audit;
  for (std::size_t e = 0; e < plan.batch_sizes.size(); ++e) {
    const std::size_t k = plan.batch_sizes[e];
    ScorerHandle before = model.snapshot();
    Rng rng = make_rng(seed, {kStreamSelection, e});
    auto* audit_ptr = sink ? &audit : nullptr;
    std::vector<SampleId> selected =
        (config.forced_selection && e == 0)
            ? forced_selection_epoch0(pool, poison_ids, *before, config.acquisition, k, rng, audit_ptr)
            : select_batch(pool, *before, config.acquisition, k, rng, audit_ptr);
    if (sink) sink(static_cast<int>(e), audit, selected);

    std::vector<LabeledEntry> delta;
    delta.reserve(selected.size());
    for (SampleId id : selected) delta.push_back(oracle.label(pool.get(id)));
    labeled.add(delta);
    model.fit_incremental(delta);

    ScorerHandle after = model.snapshot();
    EpochRecord rec;
    rec.epoch = static_cast<int>(e);
    rec.selected = selected;
    for (SampleId id : selected) rec.poisons_selected += poisons.contains(id) ? 1 : 0;
    cumulative += rec.poisons_selected;
    rec.labeled_size = labeled.size();
    rec.acc_id = accuracy(*after, eval.id_test);
    rec.acc_ood = accuracy(*after, eval.ood_test);
    rec.asr = attack_success_rate(*after, eval.ood_test, config.trigger, config.target_class,
                                  config.exclude_target_class);
    if (!poisons.empty()) rec.r_select_cumulative = 100.0 * static_cast<double>(cumulative) / poisons.size();
    record.epochs.push_back(std::move(rec));
  }
  return record;
}

}  // namespace alab
