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
#include "alab/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "alab/triggers.hpp"

namespace alab {

void GAConfig::validate() const {
  if (population_size < 1) throw InvalidArgument("population size must be >= 1");
  if (tournament_size < 1 || tournament_size > population_size) {
    throw InvalidArgument("tournament size must be in [1, population size]");
  }
  if (mutation_rate < 0.0 || mutation_rate > 1.0) throw InvalidArgument("mutation rate must be in [0, 1]");
  if (search_pgd_steps && *search_pgd_steps < 0) throw InvalidArgument("search_pgd_steps must be >= 0");
}

std::size_t poison_target_count(std::size_t pool_size, double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgument("poisoning ratio must be in (0, 1)");
  const auto n = static_cast<std::size_t>(std::floor(ratio * static_cast<double>(pool_size) + 1e-9));
  return std::max<std::size_t>(1, n);
}

CandidateSelection select_candidates(const UnlabeledPool& pool, int target_class, double ratio,
                                     const Scorer& model, const Oracle& oracle, Acquisition metric) {
  CandidateSelection sel;
  sel.target_count = poison_target_count(pool.remaining_count(), ratio);
  auto scores = score_remaining(pool, model, metric);
  const std::size_t n = scores.size();
  for (SampleId id : top_k(std::move(scores), n)) {
    ++sel.labels_queried;
    if (oracle.query(id) != target_class) continue;
    sel.candidates.push_back(pool.get(id));
    if (sel.candidates.size() >= sel.target_count) return sel;
  }
  std::size_t found = sel.candidates.size();
  throw PartialCandidatesError(
      fmt::format("pool exhausted with {} of {} class-{} candidates", found, sel.target_count, target_class),
      std::move(sel));
}

namespace {

std::size_t tournament(std::span<const Individual> population, int size, Rng& rng) {
  const std::size_t n = population.size();
  const std::size_t draws = std::min<std::size_t>(static_cast<std::size_t>(size), n);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = 0; i < draws; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  std::size_t winner = idx[0];
  for (std::size_t i = 1; i < draws; ++i) {
    const std::size_t c = idx[i];
    if (population[c].fitness > population[winner].fitness ||
        (population[c].fitness == population[winner].fitness && c < winner)) {
      winner = c;
    }
  }
  return winner;
}

}  // namespace

SearchResult selection_aware_search(const Image& seed, int generations, const GAConfig& config,
                                    const FitnessFn& fitness, const MutateFn& mutate_fn,
                                    std::uint64_t stream_seed) {
  if (generations < 0) throw InvalidArgument("generation count must be >= 0");
  config.validate();
  auto [seed_triggered, seed_fitness] = fitness(seed);
  SearchResult result{Individual{seed, std::move(seed_triggered), seed_fitness}, {seed_fitness}};
  std::vector<Individual> population{result.best};
  const auto size = static_cast<std::size_t>(config.population_size);

  for (int g = 1; g <= generations; ++g) {
    std::vector<Individual> children;
    children.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
      Rng rng = make_rng(stream_seed, {static_cast<std::uint64_t>(g), i});
      const Individual& parent = population[tournament(population, config.tournament_size, rng)];
      Image child = mutate_fn(parent.clean, rng, i);
      auto [triggered, score] = fitness(child);
      children.push_back(Individual{std::move(child), std::move(triggered), score});
    }
    auto by_fitness = [](const Individual& a, const Individual& b) { return a.fitness < b.fitness; };
    // max_element/min_element return the first of equal elements.
    auto best_child = std::max_element(children.begin(), children.end(), by_fitness);
    if (best_child->fitness > result.best.fitness) {
      result.best = *best_child;
    } else {
      *std::min_element(children.begin(), children.end(), by_fitness) = result.best;
    }
    result.trajectory.push_back(result.best.fitness);
    population = std::move(children);
  }
  return result;
}

PoisonResult optimize_poison(const Sample& seed, const Scorer& model, const TriggerSpec& spec,
                             int generations, const GAConfig& config, std::uint64_t stream_seed,
                             PoisonLedger& ledger, Acquisition metric, std::span<const MutationOp> ops) {
  if (generations < 0) throw InvalidArgument("generation count must be >= 0");
  if (seed.is_poisoned) throw InvalidArgument("optimisation seed must be a clean sample");
  validate(spec);
  TriggerSpec search_spec = spec;
  bool reduced = false;
  if (auto* cl = std::get_if<ClTrigger>(&search_spec); cl && config.search_pgd_steps &&
                                                        *config.search_pgd_steps != cl->pgd_steps) {
    cl->pgd_steps = *config.search_pgd_steps;
    reduced = true;
  }
  const int label = seed.true_label;
  FitnessFn fitness = [&](const Image& clean) {
    Image triggered = trigger_image(clean, label, search_spec, &model);
    double score = uncertainty(model.predict_proba(triggered), metric);
    return std::make_pair(std::move(triggered), score);
  };
  MutateFn mutate_fn = [&](const Image& parent, Rng& rng, std::size_t) {
    return mutate(parent, config.mutation_rate, rng, ops);
  };
  SearchResult search = selection_aware_search(seed.image, generations, config, fitness, mutate_fn, stream_seed);

  Sample clean = seed;
  if (search.best.clean != seed.image) {
    clean = Sample{ledger.allocate_id(), search.best.clean, seed.true_label, false, seed.id};
  }
  Image triggered = reduced ? trigger_image(clean.image, label, spec, &model) : search.best.triggered;
  Sample poison = make_poisoned_sample(clean, triggered, spec, ledger);
  OptimizationTrace trace{seed.id, std::move(search.trajectory), poison.id, generations};
  return PoisonResult{std::move(poison), std::move(trace)};
}

PoisonBuild build_poisons(UnlabeledPool& pool, const AttackOptions& options, const Scorer& model,
                          const Oracle& oracle, PoisonLedger& ledger, std::uint64_t seed) {
  CandidateSelection selection =
      select_candidates(pool, options.target_class, options.poisoning_ratio, model, oracle, options.metric);
  PoisonBuild build;
  build.labels_queried = selection.labels_queried;
  for (const Sample& candidate : selection.candidates) {
    const std::uint64_t stream = derive_seed(seed, {kStreamAttack, candidate.id.value});
    PoisonResult result = optimize_poison(candidate, model, options.trigger, options.generations, options.ga,
                                          stream, ledger, options.metric);
    pool.replace(candidate.id, result.poison);
    ledger.set_replaced(result.poison.id, candidate.id);
    build.poisons.push_back(std::move(result.poison));
    build.traces.push_back(std::move(result.trace));
  }
  return build;
}

}  // namespace alab
