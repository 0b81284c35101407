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
#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "alab/acquisition.hpp"
#include "alab/attack.hpp"
#include "alab/errors.hpp"
#include "alab/imgops.hpp"
#include "alab/mutation.hpp"
#include "alab/triggers.hpp"
#include "synthetic_world.hpp"
#include "test_models.hpp"

namespace alab {
namespace {

Image random_image(Shape shape, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(0, 255);
  Image image(shape);
  for (auto& p : image.pixels()) p = static_cast<std::uint8_t>(u(rng));
  return image;
}

TEST(Mutation, ZeroRateIsIdentity) {
  std::mt19937_64 gen(1);
  const Image image = random_image(Shape{6, 6, 3}, gen);
  Rng rng(2);
  for (int i = 0; i < 50; ++i) EXPECT_EQ(mutate(image, 0.0, rng), image);
}

TEST(Mutation, BrightnessShiftArithmetic) {
  const std::vector<MutationOp> ops{{MutationKind::kBrightness, 10.0, 10.0}};
  Rng rng(0);
  EXPECT_EQ(mutate(Image(Shape{4, 4, 1}, 100), 1.0, rng, ops), Image(Shape{4, 4, 1}, 110));
}

TEST(Mutation, MedianRemovesImpulse) {
  Image image(Shape{5, 5, 1}, 90);
  image.at(2, 2, 0) = 255;
  Rng rng(0);
  EXPECT_EQ(apply_mutation(image, MutationKind::kMedianBlur, 1.0, rng), Image(Shape{5, 5, 1}, 90));
}

TEST(Mutation, AllOperatorsPreserveShape) {
  std::mt19937_64 gen(3);
  ASSERT_EQ(default_mutation_ops().size(), 9u);
  for (Shape shape : {Shape{9, 7, 1}, Shape{5, 6, 3}}) {
    const Image image = random_image(shape, gen);
    for (const auto& op : default_mutation_ops()) {
      for (double t : {0.0, 0.5, 1.0}) {
        Rng rng(4);
        const Image out = apply_mutation(image, op.kind, op.low + t * (op.high - op.low), rng);
        EXPECT_EQ(out.shape(), shape) << to_string(op.kind);
      }
      EXPECT_EQ(parse_mutation(to_string(op.kind)), op.kind);
    }
  }
  EXPECT_THROW(parse_mutation("sharpen"), InvalidArgument);
}

TEST(Candidates, TargetCountFloorsWithMinimumOne) {
  EXPECT_EQ(poison_target_count(200, 0.01), 2u);
  EXPECT_EQ(poison_target_count(50, 0.01), 1u);
  EXPECT_EQ(poison_target_count(1000, 0.005), 5u);
  EXPECT_THROW(poison_target_count(100, 0.0), InvalidArgument);
}

struct TablePool {
  UnlabeledPool pool;
  Oracle oracle;
  testing::TableScorer model;
};

TablePool labelled_table_pool(const std::vector<ProbVector>& table, const std::vector<int>& labels) {
  std::vector<Sample> samples;
  for (std::size_t i = 0; i < table.size(); ++i) {
    samples.push_back(Sample{SampleId{i}, testing::TableScorer::encode_index(i), labels[i], false, std::nullopt});
  }
  Oracle oracle(samples);
  return TablePool{UnlabeledPool(std::move(samples)), std::move(oracle), testing::TableScorer(table)};
}

TEST(Candidates, BestCaseQueriesOnlyTheTarget) {
  std::vector<ProbVector> table;
  std::vector<int> labels;
  for (int i = 0; i < 100; ++i) {
    const double top = i < 3 ? 0.4 : 0.9;
    table.push_back(ProbVector({top, (1 - top) / 2, (1 - top) / 2}));
    labels.push_back(i < 3 ? 1 : 0);
  }
  auto t = labelled_table_pool(table, labels);
  const auto sel = select_candidates(t.pool, 1, 0.03, t.model, t.oracle);
  EXPECT_EQ(sel.candidates.size(), 3u);
  EXPECT_EQ(sel.labels_queried, 3u);
  EXPECT_EQ(sel.target_count, 3u);
}

TEST(Candidates, NoTargetSamplesGivesEmptyPartial) {
  std::vector<ProbVector> table(20, ProbVector::uniform(3));
  auto t = labelled_table_pool(table, std::vector<int>(20, 0));
  try {
    select_candidates(t.pool, 2, 0.1, t.model, t.oracle);
    FAIL() << "expected a partial-candidate error";
  } catch (const PartialCandidatesError& e) {
    EXPECT_TRUE(e.found().candidates.empty());
    EXPECT_EQ(e.found().labels_queried, 20u);
  }
}

TEST(Candidates, MatchesFullSortLinearScanOracle) {
  std::mt19937_64 gen(8);
  std::vector<ProbVector> table;
  std::vector<int> labels;
  for (int i = 0; i < 200; ++i) {
    table.push_back(testing::random_prob_vector(3, gen));
    labels.push_back(static_cast<int>(gen() % 3));
  }
  auto t = labelled_table_pool(table, labels);
  const auto sel = select_candidates(t.pool, 1, 0.01, t.model, t.oracle);
  ASSERT_EQ(sel.candidates.size(), 2u);

  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < table.size(); ++i) order.emplace_back(-entropy(table[i]), i);
  std::sort(order.begin(), order.end());
  std::vector<std::uint64_t> expected;
  std::size_t queried = 0;
  for (const auto& [neg, i] : order) {
    ++queried;
    if (labels[i] == 1) expected.push_back(i);
    if (expected.size() == 2) break;
  }
  EXPECT_EQ(sel.candidates[0].id.value, expected[0]);
  EXPECT_EQ(sel.candidates[1].id.value, expected[1]);
  EXPECT_EQ(sel.labels_queried, queried);
}

// Fitness on 4x4 binary images with distinct values for distinct images.
struct ToyFitness {
  std::vector<double> unary;
  std::vector<double> pair;

  explicit ToyFitness(std::uint64_t seed) : unary(16), pair(256) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    for (auto& v : unary) v = n(rng);
    for (auto& v : pair) v = 0.3 * n(rng);
  }
  double operator()(const Image& image) const {
    double f = 0.0;
    for (std::size_t p = 0; p < 16; ++p) {
      if (image.pixels()[p] == 0) continue;
      f += unary[p];
      for (std::size_t q = p + 1; q < 16; ++q) f += image.pixels()[q] ? pair[p * 16 + q] : 0.0;
    }
    return f;
  }
};

Image flip(const Image& image, std::size_t p) {
  Image out = image;
  out.pixels()[p] = out.pixels()[p] ? 0 : 255;
  return out;
}

TEST(SelectionAwareSearch, ExhaustiveNeighbourhoodMatchesHillClimb) {
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const ToyFitness f(trial);
    std::mt19937_64 gen(trial + 100);
    Image seed(Shape{4, 4, 1});
    for (auto& p : seed.pixels()) p = gen() % 2 ? 255 : 0;

    GAConfig config;
    config.population_size = 16;
    config.tournament_size = 16;
    config.mutation_rate = 1.0;
    const int generations = 12;
    const FitnessFn fitness = [&](const Image& clean) { return std::make_pair(clean, f(clean)); };
    const MutateFn mutate_fn = [](const Image& parent, Rng&, std::size_t i) { return flip(parent, i); };
    const auto result = selection_aware_search(seed, generations, config, fitness, mutate_fn, trial);

    std::vector<double> oracle{f(seed)};
    Image current = seed;
    for (int g = 0; g < generations; ++g) {
      Image best = flip(current, 0);
      for (std::size_t p = 1; p < 16; ++p) {
        Image n = flip(current, p);
        if (f(n) > f(best)) best = n;
      }
      if (f(best) > f(current)) current = best;
      oracle.push_back(f(current));
    }
    EXPECT_EQ(result.trajectory, oracle) << "trial " << trial;
    EXPECT_EQ(result.best.clean, current);
  }
}

TEST(SelectionAwareSearch, RejectsBadConfig) {
  GAConfig config;
  config.tournament_size = 200;
  EXPECT_THROW(config.validate(), InvalidArgument);
  config = GAConfig{};
  config.mutation_rate = 1.5;
  EXPECT_THROW(config.validate(), InvalidArgument);
}

class OptimizePoison : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { world_ = new World(testing::default_world(0)); }
  static void TearDownTestSuite() {
    delete world_;
    world_ = nullptr;
  }
  static const Sample& seed_sample() {
    for (const auto& s : world_->pool.all()) {
      if (s.true_label == 0) return s;
    }
    throw InvalidArgument("no class-0 sample");
  }
  static World* world_;
};
World* OptimizePoison::world_ = nullptr;

TEST_F(OptimizePoison, ZeroGenerationsReturnsTriggeredSeed) {
  PoisonLedger ledger;
  GAConfig ga;
  ga.population_size = 10;
  const Sample& seed = seed_sample();
  const auto result = optimize_poison(seed, *world_->snapshot, SigTrigger{}, 0, ga, 1, ledger);
  const Image triggered = trigger_image(seed.image, seed.true_label, SigTrigger{}, world_->snapshot.get());
  EXPECT_EQ(result.poison.image, triggered);
  ASSERT_EQ(result.trace.best_fitness.size(), 1u);
  EXPECT_EQ(result.trace.best_fitness[0], entropy(world_->snapshot->predict_proba(triggered)));
  EXPECT_EQ(result.poison.origin_id, seed.id);
}

TEST_F(OptimizePoison, NoMutationMeansNoChange) {
  GAConfig ga;
  ga.population_size = 8;
  ga.mutation_rate = 0.0;
  const Sample& seed = seed_sample();
  PoisonLedger ledger;
  const auto result = optimize_poison(seed, *world_->snapshot, SigTrigger{}, 5, ga, 2, ledger);
  EXPECT_EQ(result.poison.image, trigger_image(seed.image, 0, SigTrigger{}, world_->snapshot.get()));
  EXPECT_EQ(ledger.lookup(result.poison.id).clean, seed);
}

TEST_F(OptimizePoison, TrajectoryIsNonDecreasingAndLabelKept) {
  GAConfig ga;
  ga.population_size = 20;
  const Sample& seed = seed_sample();
  for (const TriggerSpec& spec : {TriggerSpec{SigTrigger{}}, TriggerSpec{ClTrigger{}}}) {
    PoisonLedger ledger;
    const auto result = optimize_poison(seed, *world_->snapshot, spec, 6, ga, 3, ledger);
    ASSERT_EQ(result.trace.best_fitness.size(), 7u);
    EXPECT_TRUE(std::is_sorted(result.trace.best_fitness.begin(), result.trace.best_fitness.end()));
    EXPECT_EQ(result.poison.true_label, seed.true_label);
    EXPECT_NEAR(entropy(world_->snapshot->predict_proba(result.poison.image)), result.trace.best_fitness.back(),
                1e-12);
    EXPECT_EQ(remove_trigger(result.poison, ledger).true_label, seed.true_label);
  }
}

TEST_F(OptimizePoison, BuildPoisonsReplacesCandidates) {
  UnlabeledPool pool = world_->pool;
  Oracle oracle(pool.all());
  PoisonLedger ledger;
  AttackOptions options;
  options.generations = 2;
  options.ga.population_size = 10;
  options.poisoning_ratio = 0.5 / static_cast<double>(pool.total());
  const auto build = build_poisons(pool, options, *world_->snapshot, oracle, ledger, 0);
  ASSERT_EQ(build.poisons.size(), 1u);
  const auto& poison = build.poisons[0];
  EXPECT_TRUE(pool.contains(poison.id));
  ASSERT_TRUE(ledger.lookup(poison.id).replaced_id.has_value());
  EXPECT_FALSE(pool.contains(*ledger.lookup(poison.id).replaced_id));
  EXPECT_EQ(poison.true_label, options.target_class);
  EXPECT_EQ(count_clean_label_violations(build.poisons, ledger), 0u);
}

TEST_F(OptimizePoison, GenerationsRaisePoisonEntropy) {
  auto mean_entropy = [&](int generations) {
    UnlabeledPool pool = world_->pool;
    Oracle oracle(pool.all());
    PoisonLedger ledger;
    AttackOptions options;
    options.generations = generations;
    options.ga.population_size = 30;
    const auto build = build_poisons(pool, options, *world_->snapshot, oracle, ledger, 5);
    double sum = 0.0;
    for (const auto& p : build.poisons) sum += entropy(world_->snapshot->predict_proba(p.image));
    return std::make_pair(sum / static_cast<double>(build.poisons.size()), build);
  };
  const auto [h0, build0] = mean_entropy(0);
  const auto [h10, build10] = mean_entropy(10);
  EXPECT_GT(h10, h0);

  double triggered = 0.0;
  for (const auto& p : build0.poisons) {
    const Sample& clean = world_->pool.get(*p.origin_id);
    triggered += entropy(world_->snapshot->predict_proba(
        trigger_image(clean.image, clean.true_label, SigTrigger{}, world_->snapshot.get())));
  }
  EXPECT_NEAR(h0, triggered / static_cast<double>(build0.poisons.size()), 1e-12);
}

}  // namespace
}  // namespace alab
