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
#include "alab/experiment.hpp"

#include <unordered_set>

#include "alab/ood_pool.hpp"
#include "alab/reference_classifier.hpp"

namespace alab {

World prepare_world(const Dataset& dataset, const ExperimentConfig& config, std::uint64_t seed) {
  config.validate();
  World world;
  world.seed = seed;
  world.num_classes = dataset.num_classes;
  world.id_train = dataset.id_train;

  TrainingOptions training = config.training;
  training.seed = derive_seed(seed, {kStreamModelInit});
  auto model = std::make_unique<ReferenceClassifier>(dataset.shape, dataset.num_classes, training);
  world.snapshot = pretrain(*model, dataset.id_train, config.pretrain_epochs, config.replay_initial);
  world.pretrained = std::move(model);

  OodPoolOptions options;
  options.max_tries = config.max_corruption_tries;
  options.seed = seed;
  OodPoolBuild build = build_ood_pool(dataset.ood_pool_source, *world.snapshot, options, dataset.precorrupted);
  world.pool = std::move(build.pool);
  world.ood_skipped = build.skipped;

  world.eval.id_test = dataset.id_test;
  if (config.ood_eval == OodEvalProtocol::kFresh) {
    world.eval.ood_test = corrupt_fresh(dataset.ood_test, options.corruptions, seed);
  } else {
    OodPoolOptions held = options;
    held.seed = derive_seed(seed, {kStreamOodEval});
    auto pool = build_ood_pool(dataset.ood_test, *world.snapshot, held).pool;
    world.eval.ood_test.assign(pool.all().begin(), pool.all().end());
  }
  return world;
}

RunArtifacts run_experiment(const World& world, const ExperimentConfig& config, bool record_scores) {
  config.validate();
  RunArtifacts a;
  a.pool = world.pool;
  a.oracle.register_samples(world.pool.all());
  a.oracle.register_samples(world.id_train);
  a.final_model = world.pretrained->clone();

  std::size_t attacker_labels = 0;
  std::vector<SampleId> poison_ids;
  if (config.inject_poisons) {
    AttackOptions options;
    options.target_class = config.target_class;
    options.poisoning_ratio = config.poisoning_ratio;
    options.generations = config.ga_generations;
    options.ga = config.ga;
    options.trigger = config.trigger;
    options.metric = config.attacker_metric;
    PoisonBuild build = build_poisons(a.pool, options, *world.snapshot, a.oracle, a.ledger, world.seed);
    a.oracle.register_samples(build.poisons);
    for (const auto& p : build.poisons) poison_ids.push_back(p.id);
    attacker_labels = build.labels_queried;
    a.poisons = std::move(build.poisons);
    a.traces = std::move(build.traces);
  }

  for (const auto& s : world.id_train) a.labeled.add(a.oracle.label(s));

  ScoreSink sink;
  if (record_scores) {
    sink = [&a](int epoch, std::span<const AcquisitionScore> scores, std::span<const SampleId> selected) {
      std::unordered_set<SampleId> chosen(selected.begin(), selected.end());
      for (const auto& s : scores) a.scores.push_back(ScoreRow{epoch, s.id, s.score, chosen.contains(s.id)});
    };
  }
  a.record = run_al(config, world.seed, a.pool, *a.final_model, a.oracle, world.eval, poison_ids, a.labeled, sink);
  a.record.attacker_labels_queried = attacker_labels;
  a.record.ood_skipped = world.ood_skipped;
  return a;
}

}  // namespace alab
