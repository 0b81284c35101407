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
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "alab/acquisition.hpp"
#include "alab/attack.hpp"
#include "alab/mutation.hpp"
#include "alab/reference_classifier.hpp"
#include "alab/synth.hpp"

namespace {

using namespace alab;

std::vector<Sample> random_samples(std::size_t n, Shape shape, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Sample> samples;
  for (std::size_t i = 0; i < n; ++i) {
    Image image(shape);
    for (auto& p : image.pixels()) p = static_cast<std::uint8_t>(gen() % 256);
    samples.push_back(Sample{SampleId{i}, image, static_cast<int>(i % 3), false, std::nullopt});
  }
  return samples;
}

void BM_SelectBatch(benchmark::State& state) {
  const Shape shape{16, 16, 1};
  const ReferenceClassifier model(shape, 3);
  const UnlabeledPool source(random_samples(static_cast<std::size_t>(state.range(0)), shape, 1));
  for (auto _ : state) {
    UnlabeledPool pool = source;
    Rng rng(0);
    benchmark::DoNotOptimize(select_batch(pool, model, Acquisition::kEntropy, 50, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SelectBatch)->Arg(1000)->Arg(5000);

void BM_PredictBatch(benchmark::State& state) {
  const Shape shape{16, 16, 1};
  const ReferenceClassifier model(shape, 3);
  std::vector<Image> images;
  for (const auto& s : random_samples(static_cast<std::size_t>(state.range(0)), shape, 2)) images.push_back(s.image);
  for (auto _ : state) benchmark::DoNotOptimize(model.predict_proba_batch(images));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PredictBatch)->Arg(100)->Arg(1000);

void BM_Mutation(benchmark::State& state) {
  const auto kind = static_cast<MutationKind>(state.range(0));
  const Image image = random_samples(1, Shape{32, 32, 3}, 3).front().image;
  const auto& op = default_mutation_ops()[static_cast<std::size_t>(state.range(0))];
  Rng rng(0);
  for (auto _ : state) benchmark::DoNotOptimize(apply_mutation(image, kind, 0.5 * (op.low + op.high), rng));
  state.SetLabel(to_string(kind));
}
BENCHMARK(BM_Mutation)->DenseRange(0, 8);

void BM_GaGeneration(benchmark::State& state) {
  BlobDatasetSpec spec;
  spec.train_count = 60;
  const Dataset dataset = generate(spec);
  ReferenceClassifier model(spec.shape, spec.classes);
  const Sample& seed = dataset.ood_pool_source.front();
  GAConfig config;
  config.population_size = static_cast<int>(state.range(0));
  for (auto _ : state) {
    PoisonLedger ledger;
    benchmark::DoNotOptimize(optimize_poison(seed, model, SigTrigger{}, 1, config, 0, ledger));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GaGeneration)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
