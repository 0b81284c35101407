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
#include "alab/config.hpp"

#include <cmath>

#include <fmt/format.h>

#include "alab/errors.hpp"

namespace alab {

std::string to_string(OodEvalProtocol protocol) {
  return protocol == OodEvalProtocol::kFresh ? "fresh" : "held_out";
}

namespace {

OodEvalProtocol parse_protocol(const std::string& name) {
  if (name == "fresh") return OodEvalProtocol::kFresh;
  if (name == "held_out") return OodEvalProtocol::kHeldOut;
  throw InvalidArgument(fmt::format("unknown OOD evaluation protocol '{}'", name));
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!(per_epoch_fraction > 0.0 && per_epoch_fraction <= budget_fraction && budget_fraction <= 1.0)) {
    throw InvalidArgument("need 0 < per_epoch_fraction <= budget_fraction <= 1");
  }
  if (!(poisoning_ratio > 0.0 && poisoning_ratio < 1.0)) throw InvalidArgument("poisoning ratio must be in (0, 1)");
  if (ga_generations < 0) throw InvalidArgument("GA generations must be >= 0");
  if (target_class < 0) throw InvalidArgument("target class must be >= 0");
  if (max_corruption_tries < 1) throw InvalidArgument("max_corruption_tries must be >= 1");
  if (attacker_metric == Acquisition::kRandom) throw InvalidArgument("attacker metric must be an uncertainty");
  if (pretrain_epochs < 0) throw InvalidArgument("pretrain epochs must be >= 0");
  if (seeds.empty()) throw InvalidArgument("at least one seed is required");
  ga.validate();
  alab::validate(trigger);
}

int ExperimentConfig::epochs() const {
  return static_cast<int>(std::floor(budget_fraction / per_epoch_fraction + 1e-9));
}

void to_json(nlohmann::json& j, const GAConfig& c) {
  j = {{"population_size", c.population_size},
       {"tournament_size", c.tournament_size},
       {"mutation_rate", c.mutation_rate}};
  if (c.search_pgd_steps) j["search_pgd_steps"] = *c.search_pgd_steps;
}

void from_json(const nlohmann::json& j, GAConfig& c) {
  c.population_size = j.value("population_size", c.population_size);
  c.tournament_size = j.value("tournament_size", c.tournament_size);
  c.mutation_rate = j.value("mutation_rate", c.mutation_rate);
  if (j.contains("search_pgd_steps")) c.search_pgd_steps = j.at("search_pgd_steps").get<int>();
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  nlohmann::json trigger;
  to_json(trigger, c.trigger);
  nlohmann::json ga;
  to_json(ga, c.ga);
  j = {{"budget_fraction", c.budget_fraction},
       {"per_epoch_fraction", c.per_epoch_fraction},
       {"poisoning_ratio", c.poisoning_ratio},
       {"acquisition", to_string(c.acquisition)},
       {"target_class", c.target_class},
       {"ga", ga},
       {"ga_generations", c.ga_generations},
       {"trigger", trigger},
       {"seeds", c.seeds},
       {"forced_selection", c.forced_selection},
       {"inject_poisons", c.inject_poisons},
       {"max_corruption_tries", c.max_corruption_tries},
       {"attacker_metric", to_string(c.attacker_metric)},
       {"exclude_target_class", c.exclude_target_class},
       {"ood_eval", to_string(c.ood_eval)},
       {"training",
        {{"hidden", c.training.hidden},
         {"learning_rate", c.training.learning_rate},
         {"batch_size", c.training.batch_size},
         {"epochs_per_fit", c.training.epochs_per_fit}}},
       {"pretrain_epochs", c.pretrain_epochs},
       {"replay_initial", c.replay_initial}};
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  c = ExperimentConfig{};
  c.budget_fraction = j.value("budget_fraction", c.budget_fraction);
  c.per_epoch_fraction = j.value("per_epoch_fraction", c.per_epoch_fraction);
  c.poisoning_ratio = j.value("poisoning_ratio", c.poisoning_ratio);
  if (j.contains("acquisition")) c.acquisition = parse_acquisition(j.at("acquisition").get<std::string>());
  c.target_class = j.value("target_class", c.target_class);
  if (j.contains("ga")) from_json(j.at("ga"), c.ga);
  c.ga_generations = j.value("ga_generations", c.ga_generations);
  if (j.contains("trigger")) from_json(j.at("trigger"), c.trigger);
  if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  c.forced_selection = j.value("forced_selection", c.forced_selection);
  c.inject_poisons = j.value("inject_poisons", c.inject_poisons);
  c.max_corruption_tries = j.value("max_corruption_tries", c.max_corruption_tries);
  if (j.contains("attacker_metric")) {
    c.attacker_metric = parse_acquisition(j.at("attacker_metric").get<std::string>());
  }
  c.exclude_target_class = j.value("exclude_target_class", c.exclude_target_class);
  if (j.contains("ood_eval")) c.ood_eval = parse_protocol(j.at("ood_eval").get<std::string>());
  if (j.contains("training")) {
    const auto& t = j.at("training");
    c.training.hidden = t.value("hidden", c.training.hidden);
    c.training.learning_rate = t.value("learning_rate", c.training.learning_rate);
    c.training.batch_size = t.value("batch_size", c.training.batch_size);
    c.training.epochs_per_fit = t.value("epochs_per_fit", c.training.epochs_per_fit);
  }
  c.pretrain_epochs = j.value("pretrain_epochs", c.pretrain_epochs);
  c.replay_initial = j.value("replay_initial", c.replay_initial);
  c.validate();
}

}  // namespace alab
