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
#include <utility>
#include <vector>

#include "alab/acquisition.hpp"
#include "alab/errors.hpp"
#include "alab/ledger.hpp"
#include "alab/model.hpp"
#include "alab/mutation.hpp"
#include "alab/oracle.hpp"
#include "alab/sample.hpp"
#include "alab/trigger_spec.hpp"

namespace alab {

struct GAConfig {
  int population_size = 100;
  int tournament_size = 5;
  double mutation_rate = 0.5;
  // PGD steps used while searching with a CL trigger; the winner gets a
  // final full-strength pass. Unset = full strength throughout.
  std::optional<int> search_pgd_steps;

  bool operator==(const GAConfig&) const = default;
  void validate() const;
};

struct OptimizationTrace {
  SampleId candidate_id;
  // best_fitness[0] is the triggered seed; best_fitness[g] the best after
  // generation g. Non-decreasing.
  std::vector<double> best_fitness;
  SampleId best_id;
  int generations = 0;
};

// --- Candidate selection ---------------------------------------------------

struct CandidateSelection {
  std::vector<Sample> candidates;
  std::size_t labels_queried = 0;
  std::size_t target_count = 0;
};

// Pool exhausted before enough target-class samples were found.
class PartialCandidatesError : public Error {
 public:
  PartialCandidatesError(const std::string& what, CandidateSelection found)
      : Error(what), found_(std::move(found)) {}
  const CandidateSelection& found() const { return found_; }

 private:
  CandidateSelection found_;
};

// max(1, floor(ratio * pool_size)).
std::size_t poison_target_count(std::size_t pool_size, double ratio);

// Scans the remaining pool in descending uncertainty (ties by ascending id),
// querying the oracle per sample, until target_count samples of target_class
// are found.
CandidateSelection select_candidates(const UnlabeledPool& pool, int target_class, double ratio,
                                     const Scorer& model, const Oracle& oracle,
                                     Acquisition metric = Acquisition::kEntropy);

// --- Genetic search ----------------------------------------------------------

struct Individual {
  Image clean;
  Image triggered;
  double fitness = 0.0;
};

// Triggers a clean image and scores the triggered version.
using FitnessFn = std::function<std::pair<Image, double>(const Image& clean)>;
// Produces a child from its parent; child_index is the slot in the generation.
using MutateFn = std::function<Image(const Image& parent, Rng& rng, std::size_t child_index)>;

struct SearchResult {
  Individual best;
  std::vector<double> trajectory;  // as OptimizationTrace::best_fitness
};

// Elitist GA: each generation breeds population_size children by tournament
// selection (without replacement) over the previous population, whole-image
// inheritance from the single winner and mutation. The global best replaces
// the worst child when it is not already present, so tournament_size ==
// population_size always breeds from the running best.
SearchResult selection_aware_search(const Image& seed, int generations, const GAConfig& config,
                                    const FitnessFn& fitness, const MutateFn& mutate_fn,
                                    std::uint64_t stream_seed);

struct PoisonResult {
  Sample poison;
  OptimizationTrace trace;
};

// Maximises the uncertainty of the triggered seed and registers the winner.
PoisonResult optimize_poison(const Sample& seed, const Scorer& model, const TriggerSpec& spec,
                             int generations, const GAConfig& config, std::uint64_t stream_seed,
                             PoisonLedger& ledger, Acquisition metric = Acquisition::kEntropy,
                             std::span<const MutationOp> ops = default_mutation_ops());

struct AttackOptions {
  int target_class = 0;
  double poisoning_ratio = 0.01;
  int generations = 10;
  GAConfig ga;
  TriggerSpec trigger = SigTrigger{};
  Acquisition metric = Acquisition::kEntropy;
};

struct PoisonBuild {
  std::vector<Sample> poisons;
  std::vector<OptimizationTrace> traces;
  std::size_t labels_queried = 0;
};

// Candidate selection plus one optimisation per candidate. Each poison takes
// its candidate's pool position.
PoisonBuild build_poisons(UnlabeledPool& pool, const AttackOptions& options, const Scorer& model,
                          const Oracle& oracle, PoisonLedger& ledger, std::uint64_t seed);

}  // namespace alab
