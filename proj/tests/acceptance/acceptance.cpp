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
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "alab/acquisition.hpp"
#include "alab/al_loop.hpp"
#include "alab/attack.hpp"
#include "alab/corruption.hpp"
#include "alab/errors.hpp"
#include "alab/experiment.hpp"
#include "alab/fixture.hpp"
#include "alab/imgops.hpp"
#include "alab/metrics.hpp"
#include "alab/ood_pool.hpp"
#include "alab/reference_classifier.hpp"
#include "alab/rng.hpp"
#include "alab/run_io.hpp"
#include "alab/synth.hpp"
#include "alab/triggers.hpp"
#include "gradient_check.hpp"
#include "synthetic_world.hpp"
#include "test_models.hpp"

namespace alab {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- Shared desk-scale runs ----------------------------------------------------

struct IntegrityTally {
  std::size_t runs = 0;
  std::size_t clean_label_violations = 0;
  std::size_t label_mismatches = 0;
};

IntegrityTally& tally() {
  static IntegrityTally t;
  return t;
}

const World& world_for(std::uint64_t seed) {
  static std::map<std::uint64_t, World> worlds;
  auto it = worlds.find(seed);
  if (it == worlds.end()) it = worlds.emplace(seed, testing::default_world(seed)).first;
  return it->second;
}

RunArtifacts checked_run(const World& world, const ExperimentConfig& config) {
  RunArtifacts run = run_experiment(world, config);
  ++tally().runs;
  tally().clean_label_violations += count_clean_label_violations(run.poisons, run.ledger);
  tally().label_mismatches += count_label_mismatches(run.labeled, run.oracle);
  return run;
}

enum class Arm { kEntropyG10, kEntropyG0, kRandomG10, kRandomG0, kForcedG10 };

ExperimentConfig arm_config(Arm arm) {
  ExperimentConfig config;
  config.trigger = SigTrigger{};
  config.poisoning_ratio = 0.01;
  config.target_class = 0;
  const bool random = arm == Arm::kRandomG10 || arm == Arm::kRandomG0;
  config.acquisition = random ? Acquisition::kRandom : Acquisition::kEntropy;
  config.ga_generations = (arm == Arm::kEntropyG0 || arm == Arm::kRandomG0) ? 0 : 10;
  config.forced_selection = arm == Arm::kForcedG10;
  return config;
}

constexpr int kTrendSeeds = 5;

const RunRecord& arm_run(Arm arm, std::uint64_t seed) {
  static std::map<std::pair<int, std::uint64_t>, RunRecord> cache;
  const auto key = std::make_pair(static_cast<int>(arm), seed);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, checked_run(world_for(seed), arm_config(arm)).record).first;
  return it->second;
}

double mean_over_seeds(Arm arm, const std::function<double(const RunRecord&)>& metric) {
  double sum = 0.0;
  for (int s = 0; s < kTrendSeeds; ++s) sum += metric(arm_run(arm, static_cast<std::uint64_t>(s)));
  return sum / kTrendSeeds;
}

// --- Criteria ------------------------------------------------------------------

Verdict criterion_1() {
  const auto start = Clock::now();
  const auto table = CurveTable::load(std::filesystem::path(ALAB_FIXTURE_DIR) / "selection_curves.csv");
  bool any = false;
  std::string detail;
  for (const auto& subset : plausible_subsets({5, 10, 15})) {
    const auto result = correlate(table, subset);
    const bool ok = std::abs(result.r - 0.698) <= 0.05 && result.p_value < 0.001;
    any = any || ok;
    detail += fmt::format("[{} r={:.4f} p={:.3g} n={}] ", subset.describe(), result.r, result.p_value, result.n);
  }
  const double elapsed = seconds_since(start);
  detail += fmt::format("target r=0.698+-0.05 p<0.001; {:.3f}s", elapsed);
  return {any && elapsed < 1.0, detail};
}

Verdict criterion_2() {
  const auto start = Clock::now();
  std::mt19937_64 gen(2);
  std::size_t mismatches = 0;
  std::size_t checks = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ProbVector> table;
    const int classes = 2 + static_cast<int>(gen() % 9);
    for (int i = 0; i < 1000; ++i) table.push_back(testing::random_prob_vector(classes, gen));
    const testing::TableScorer model(table);
    for (Acquisition acquisition : {Acquisition::kEntropy, Acquisition::kMargin, Acquisition::kLeastConfidence}) {
      std::vector<std::pair<double, std::uint64_t>> order;
      for (std::size_t i = 0; i < table.size(); ++i) {
        order.emplace_back(-uncertainty(table[i], acquisition), static_cast<std::uint64_t>(i));
      }
      std::sort(order.begin(), order.end());
      for (std::size_t k : {1u, 10u, 50u}) {
        UnlabeledPool pool = testing::table_pool(table.size());
        Rng rng(static_cast<std::uint64_t>(trial));
        const auto picked = select_batch(pool, model, acquisition, k, rng);
        std::set<std::uint64_t> got, want;
        for (SampleId id : picked) got.insert(id.value);
        for (std::size_t j = 0; j < k; ++j) want.insert(order[j].second);
        mismatches += got == want ? 0 : 1;
        ++checks;
      }
    }
  }
  const double elapsed = seconds_since(start);
  return {mismatches == 0 && elapsed < 30.0,
          fmt::format("{} of {} selections differ from the full-sort oracle; {:.2f}s", mismatches, checks, elapsed)};
}

Verdict criterion_3() {
  const World& world = world_for(0);
  std::mt19937_64 gen(3);
  const auto pool = world.pool.all();
  std::size_t violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Sample& seed = pool[gen() % pool.size()];
    GAConfig ga;
    ga.population_size = 4 + static_cast<int>(gen() % 27);
    ga.tournament_size = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(ga.population_size));
    ga.mutation_rate = std::uniform_real_distribution<double>(0.0, 1.0)(gen);
    TriggerSpec spec = SigTrigger{};
    if (trial % 2 == 1) {
      spec = ClTrigger{};
      ga.search_pgd_steps = 2;
    }
    PoisonLedger ledger;
    const auto result = optimize_poison(seed, *world.snapshot, spec, 15, ga, gen(), ledger);
    const auto& h = result.trace.best_fitness;
    if (h.size() != 16 || !std::is_sorted(h.begin(), h.end())) ++violations;
  }
  return {violations == 0, fmt::format("{} non-monotone trajectories in 100 runs of 15 generations", violations)};
}

Verdict criterion_4() {
  const auto start = Clock::now();
  auto epoch0 = [](const RunRecord& r) { return r_select(r, 0); };
  const double e10 = mean_over_seeds(Arm::kEntropyG10, epoch0);
  const double e0 = mean_over_seeds(Arm::kEntropyG0, epoch0);
  const double r10 = mean_over_seeds(Arm::kRandomG10, epoch0);
  const double r0 = mean_over_seeds(Arm::kRandomG0, epoch0);
  const double elapsed = seconds_since(start);
  const bool pass = e10 >= 3.0 * e0 && e10 >= 5.0 * r10 && e10 >= 5.0 * r0 && elapsed < 600.0;
  return {pass, fmt::format("epoch-0 R_select entropy G=10 {:.2f}, G=0 {:.2f}; random G=10 {:.2f}, G=0 {:.2f}; {:.1f}s",
                            e10, e0, r10, r0, elapsed)};
}

Verdict criterion_5() {
  auto final_asr = [](const RunRecord& r) { return r.epochs.back().asr; };
  const double entropy = mean_over_seeds(Arm::kEntropyG10, final_asr);
  const double random = mean_over_seeds(Arm::kRandomG10, final_asr);
  const double forced = mean_over_seeds(Arm::kForcedG10, final_asr);
  const bool pass = entropy - random >= 10.0 && forced >= entropy - 3.0;
  return {pass, fmt::format("final ASR entropy {:.2f}, random {:.2f}, forced upper bound {:.2f}", entropy, random, forced)};
}

Verdict criterion_6() {
  std::mt19937_64 gen(6);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> pixel(0, 255);
  auto random_image = [&](Shape shape) {
    Image image(shape);
    for (auto& p : image.pixels()) p = static_cast<std::uint8_t>(pixel(gen));
    return image;
  };
  auto random_linear = [&](Shape shape, int classes) {
    std::vector<double> w(shape.size() * static_cast<std::size_t>(classes));
    std::vector<double> b(static_cast<std::size_t>(classes));
    for (auto& v : w) v = normal(gen);
    for (auto& v : b) v = normal(gen);
    return testing::LinearSoftmax(shape, classes, w, b);
  };

  std::size_t bound_violations = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Shape shape{1 + static_cast<int>(gen() % 8), 1 + static_cast<int>(gen() % 8), 1 + 2 * static_cast<int>(gen() % 2)};
    const auto model = random_linear(shape, 2 + static_cast<int>(gen() % 4));
    const Image image = random_image(shape);
    const double eps = std::uniform_real_distribution<double>(0.0, 48.0)(gen);
    const double step = std::uniform_real_distribution<double>(0.1, 20.0)(gen);
    const int steps = 1 + static_cast<int>(gen() % 10);
    const Image out = pgd_perturb(image, static_cast<int>(gen() % 2), model, eps, steps, step);
    const double dev = imgops::max_absolute_difference(out, image);
    worst = std::max(worst, dev - eps);
    bound_violations += dev <= eps ? 0 : 1;
  }

  std::size_t identity_failures = 0;
  std::size_t closed_form_failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Shape shape{4, 5, 1 + 2 * (trial % 2)};
    const int classes = 2 + trial % 3;
    const auto model = random_linear(shape, classes);
    const Image image = random_image(shape);
    const int label = trial % classes;
    identity_failures += pgd_perturb(image, label, model, 0.0, 5, 8.0) == image ? 0 : 1;
    identity_failures += pgd_perturb(image, label, model, 16.0, 0, 8.0) == image ? 0 : 1;

    const Image out = pgd_perturb(image, label, model, 8.0, 1, 8.0);
    const ProbVector p = model.predict_proba(image);
    for (std::size_t d = 0; d < image.size(); ++d) {
      double g = 0.0;
      for (int k = 0; k < classes; ++k) g += (p[k] - (k == label ? 1.0 : 0.0)) * model.weight(k, d);
      const double s = g > 0 ? 1.0 : (g < 0 ? -1.0 : 0.0);
      if (out.pixels()[d] != quantize(image.pixels()[d] + 8.0 * s)) {
        ++closed_form_failures;
        break;
      }
    }
  }
  return {bound_violations == 0 && identity_failures == 0 && closed_form_failures == 0,
          fmt::format("bound violations {} of 1000 (worst excess {:.3g}); identity failures {}; closed-form mismatches {}",
                      bound_violations, std::max(worst, 0.0), identity_failures, closed_form_failures)};
}

Verdict criterion_7() {
  const World& world = world_for(0);
  std::mt19937_64 gen(7);
  std::vector<std::vector<double>> inputs;
  std::vector<int> labels;
  const auto& test = world.eval.id_test;
  for (int n = 0; n < 20; ++n) {
    inputs.push_back(test[gen() % test.size()].image.to_unit());
    labels.push_back(static_cast<int>(gen() % static_cast<std::uint64_t>(world.num_classes)));
  }
  const double pretrained = testing::max_gradient_relative_error(*world.snapshot, inputs, labels, 20, gen);
  TrainingOptions options;
  options.seed = 77;
  const ReferenceClassifier fresh(world.snapshot->input_shape(), world.num_classes, options);
  auto perturbed = fresh.parameters();
  for (auto& v : perturbed.w2) v = std::normal_distribution<double>(0.0, 0.5)(gen);
  ReferenceClassifier randomised = fresh;
  randomised.set_parameters(perturbed);
  const double random_init = testing::max_gradient_relative_error(randomised, inputs, labels, 20, gen);
  const double worst = std::max(pretrained, random_init);
  return {worst < 1e-3, fmt::format("max relative error {:.3g} (pretrained {:.3g}, random {:.3g})", worst,
                                    pretrained, random_init)};
}

Verdict criterion_8() {
  const World& world = world_for(0);
  ExperimentConfig config;
  checked_run(world, config);
  config.forced_selection = true;
  checked_run(world, config);
  config.forced_selection = false;
  config.trigger = ClTrigger{};
  config.ga.search_pgd_steps = 2;
  checked_run(world, config);
  config.inject_poisons = false;
  checked_run(world, config);
  const auto& t = tally();
  return {t.clean_label_violations == 0 && t.label_mismatches == 0,
          fmt::format("{} runs: {} clean-label violations, {} label mismatches", t.runs, t.clean_label_violations,
                      t.label_mismatches)};
}

Verdict criterion_9() {
  const World& world = world_for(0);
  ExperimentConfig config;
  const auto run = checked_run(world, config);
  const std::size_t pool = run.record.pool_size;
  const auto expected_total = static_cast<std::size_t>(std::floor(0.10 * static_cast<double>(pool)));
  std::set<SampleId> seen;
  std::size_t total = 0;
  bool repeats = false;
  for (const auto& epoch : run.record.epochs) {
    total += epoch.selected.size();
    for (SampleId id : epoch.selected) repeats = !seen.insert(id).second || repeats;
  }
  const bool budget_ok = total == expected_total && run.record.epochs.size() == 10 &&
                         run.labeled.size() == run.record.initial_labeled + expected_total;
  config.forced_selection = true;
  const auto forced = checked_run(world, config);
  const double forced_r = r_select(forced.record, 0);
  return {budget_ok && !repeats && forced_r == 100.0,
          fmt::format("pool {}: {} labels in {} batches (expected {} in 10); repeats {}; forced epoch-0 R_select {:.1f}",
                      pool, total, run.record.epochs.size(), expected_total, repeats ? "yes" : "no", forced_r)};
}

Verdict criterion_10() {
  std::size_t pools = 0;
  std::size_t admitted_correct = 0;
  const Dataset& dataset = testing::default_dataset();
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const World& world = world_for(seed);
    admitted_correct += static_cast<std::size_t>(std::lround(accuracy(*world.snapshot, world.pool.all()) *
                                                             static_cast<double>(world.pool.total()) / 100.0));
    ++pools;
    OodPoolOptions options;
    options.seed = seed + 100;
    options.max_tries = 5;
    const auto build = build_ood_pool(dataset.ood_test, *world.snapshot, options);
    admitted_correct += static_cast<std::size_t>(std::lround(accuracy(*world.snapshot, build.pool.all()) *
                                                             static_cast<double>(build.pool.total()) / 100.0));
    ++pools;
  }

  std::mt19937_64 gen(10);
  std::size_t operator_failures = 0;
  std::size_t applications = 0;
  for (Shape shape : {Shape{16, 16, 1}, Shape{9, 13, 3}, Shape{1, 1, 1}, Shape{32, 32, 3}}) {
    Image image(shape);
    for (auto& p : image.pixels()) p = static_cast<std::uint8_t>(gen() % 256);
    for (CorruptionKind kind : all_corruptions()) {
      for (int severity = 1; severity <= 5; ++severity) {
        Rng rng(gen());
        const Image out = apply_corruption(image, CorruptionOp{kind, severity}, rng);
        ++applications;
        operator_failures += out.shape() == shape && out.size() == shape.size() ? 0 : 1;
      }
    }
  }
  return {admitted_correct == 0 && operator_failures == 0,
          fmt::format("{} pools, {} correctly classified admitted samples; {} of {} corruption applications changed shape",
                      pools, admitted_correct, operator_failures, applications)};
}

Verdict criterion_11() {
  ExperimentConfig config;
  config.inject_poisons = false;
  config.trigger = ClTrigger{};
  config.target_class = 0;
  double sum = 0.0;
  std::string per_seed;
  int classes = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const World& world = world_for(seed);
    classes = world.num_classes;
    const double asr = checked_run(world, config).record.epochs.back().asr;
    per_seed += fmt::format(" {:.2f}", asr);
    sum += asr;
  }
  const double mean = sum / 3.0;
  const double chance = 100.0 / classes;
  return {std::abs(mean - chance) <= 5.0,
          fmt::format("clean-control ASR mean {:.2f} (per seed{}) vs chance {:.2f}", mean, per_seed, chance)};
}

Verdict criterion_12() {
  std::size_t differing = 0;
  std::size_t pairs = 0;
  for (Arm arm : {Arm::kEntropyG10, Arm::kRandomG0, Arm::kForcedG10}) {
    for (std::uint64_t seed : {0u, 1u}) {
      const World fresh = testing::default_world(seed);
      const std::string a = epochs_csv(checked_run(fresh, arm_config(arm)).record);
      const std::string b = epochs_csv(checked_run(world_for(seed), arm_config(arm)).record);
      differing += a == b ? 0 : 1;
      ++pairs;
    }
  }
  ExperimentConfig clean;
  clean.inject_poisons = false;
  clean.trigger = ClTrigger{};
  differing += epochs_csv(checked_run(world_for(0), clean).record) ==
                       epochs_csv(checked_run(testing::default_world(0), clean).record)
                   ? 0
                   : 1;
  ++pairs;
  return {differing == 0, fmt::format("{} of {} repeated runs produced different epoch CSVs", differing, pairs)};
}

const std::vector<std::function<Verdict()>>& criteria() {
  static const std::vector<std::function<Verdict()>> all{
      criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5,  criterion_6,
      criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12};
  return all;
}

bool run_one(int n) {
  Verdict verdict;
  try {
    verdict = criteria()[static_cast<std::size_t>(n - 1)]();
  } catch (const std::exception& e) {
    verdict = {false, fmt::format("error: {}", e.what())};
  }
  fmt::print("criterion {:2}: {} {}\n", n, verdict.pass ? "PASS" : "FAIL", verdict.detail);
  std::fflush(stdout);
  return verdict.pass;
}

}  // namespace
}  // namespace alab

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      selected.push_back(std::atoi(argv[++i]));
    } else {
      fmt::print(stderr, "usage: {} [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (selected.empty()) {
    for (int n = 1; n <= 12; ++n) selected.push_back(n);
  }
  bool all = true;
  for (int n : selected) {
    if (n < 1 || n > 12) {
      fmt::print(stderr, "no criterion {}\n", n);
      return 2;
    }
    all = alab::run_one(n) && all;
  }
  return all ? 0 : 1;
}
