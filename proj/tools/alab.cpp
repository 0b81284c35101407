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
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "alab/errors.hpp"
#include "alab/experiment.hpp"
#include "alab/fixture.hpp"
#include "alab/manifest.hpp"
#include "alab/metrics.hpp"
#include "alab/ood_pool.hpp"
#include "alab/report.hpp"
#include "alab/run_io.hpp"
#include "alab/synth.hpp"
#include "alab/tensor_io.hpp"

namespace fs = std::filesystem;
using namespace alab;

namespace {

struct DataOptions {
  std::string manifest;
  std::uint64_t data_seed = 0;
};

struct ConfigOptions {
  std::string config_file;
  std::optional<double> budget, per_epoch, poisoning_ratio;
  std::optional<std::string> acquisition, attacker_metric, trigger, ood_eval;
  std::optional<int> target_class, generations, population, tournament, search_pgd_steps;
  std::optional<double> mutation_rate;
  std::optional<int> sig_frequency;
  std::optional<double> sig_amplitude, cl_epsilon, cl_step_size;
  std::optional<int> cl_steps, patch_size;
  std::vector<std::uint64_t> seeds;
  bool forced_selection = false;
  bool clean_control = false;
  bool exclude_target_class = false;
  bool replay_initial = false;
  std::optional<int> max_corruption_tries, hidden, batch_size, epochs_per_fit, pretrain_epochs;
  std::optional<double> learning_rate;
};

void add_data_options(CLI::App* app, DataOptions& d) {
  app->add_option("--manifest", d.manifest, "Dataset manifest; the default synthetic spec when omitted");
  app->add_option("--data-seed", d.data_seed, "Seed of the default synthetic dataset");
}

void add_config_options(CLI::App* app, ConfigOptions& c) {
  app->add_option("--config", c.config_file, "Base ExperimentConfig JSON; flags override it");
  app->add_option("--budget", c.budget, "Total labeling budget as a pool fraction");
  app->add_option("--per-epoch", c.per_epoch, "Labels per AL epoch as a pool fraction");
  app->add_option("--poisoning-ratio", c.poisoning_ratio, "Poisons as a pool fraction");
  app->add_option("--acquisition", c.acquisition, "entropy, margin, least_confidence or random");
  app->add_option("--attacker-metric", c.attacker_metric, "Uncertainty the attacker maximises");
  app->add_option("--target-class", c.target_class, "Attacker target class");
  app->add_option("--generations", c.generations, "GA generations G");
  app->add_option("--population", c.population, "GA population size");
  app->add_option("--tournament", c.tournament, "GA tournament size");
  app->add_option("--mutation-rate", c.mutation_rate, "GA mutation probability");
  app->add_option("--search-pgd-steps", c.search_pgd_steps, "PGD steps during CL search");
  app->add_option("--trigger", c.trigger, "sig or cl");
  app->add_option("--sig-frequency", c.sig_frequency);
  app->add_option("--sig-amplitude", c.sig_amplitude);
  app->add_option("--cl-epsilon", c.cl_epsilon);
  app->add_option("--cl-steps", c.cl_steps);
  app->add_option("--cl-step-size", c.cl_step_size);
  app->add_option("--patch-size", c.patch_size);
  app->add_option("--seeds", c.seeds, "Run seeds")->delimiter(',');
  app->add_flag("--forced-selection", c.forced_selection, "Upper-bound mode: all poisons in epoch 0");
  app->add_flag("--clean-control", c.clean_control, "Run without poisons");
  app->add_flag("--exclude-target-class", c.exclude_target_class, "Drop target-class images from ASR");
  app->add_option("--ood-eval", c.ood_eval, "fresh or held_out");
  app->add_option("--max-corruption-tries", c.max_corruption_tries);
  app->add_option("--hidden", c.hidden, "Reference classifier hidden units");
  app->add_option("--learning-rate", c.learning_rate);
  app->add_option("--batch-size", c.batch_size);
  app->add_option("--epochs-per-fit", c.epochs_per_fit);
  app->add_option("--pretrain-epochs", c.pretrain_epochs);
  app->add_flag("--replay-initial", c.replay_initial, "Keep the ID training set in incremental fits");
}

ExperimentConfig build_config(const ConfigOptions& c) {
  ExperimentConfig config;
  if (!c.config_file.empty()) {
    std::ifstream in(c.config_file);
    if (!in) throw FormatError(fmt::format("cannot open {}", c.config_file));
    config = nlohmann::json::parse(in).get<ExperimentConfig>();
  }
  if (c.budget) config.budget_fraction = *c.budget;
  if (c.per_epoch) config.per_epoch_fraction = *c.per_epoch;
  if (c.poisoning_ratio) config.poisoning_ratio = *c.poisoning_ratio;
  if (c.acquisition) config.acquisition = parse_acquisition(*c.acquisition);
  if (c.attacker_metric) config.attacker_metric = parse_acquisition(*c.attacker_metric);
  if (c.target_class) config.target_class = *c.target_class;
  if (c.generations) config.ga_generations = *c.generations;
  if (c.population) config.ga.population_size = *c.population;
  if (c.tournament) config.ga.tournament_size = *c.tournament;
  if (c.mutation_rate) config.ga.mutation_rate = *c.mutation_rate;
  if (c.search_pgd_steps) config.ga.search_pgd_steps = *c.search_pgd_steps;
  if (c.trigger) {
    if (*c.trigger == "sig") {
      config.trigger = SigTrigger{};
    } else if (*c.trigger == "cl") {
      config.trigger = ClTrigger{};
    } else {
      throw InvalidArgument(fmt::format("unknown trigger '{}'", *c.trigger));
    }
  }
  if (auto* sig = std::get_if<SigTrigger>(&config.trigger)) {
    if (c.sig_frequency) sig->frequency = *c.sig_frequency;
    if (c.sig_amplitude) sig->amplitude = *c.sig_amplitude;
  }
  if (auto* cl = std::get_if<ClTrigger>(&config.trigger)) {
    if (c.cl_epsilon) {
      cl->epsilon = *c.cl_epsilon;
      if (!c.cl_step_size) cl->pgd_step_size = *c.cl_epsilon / 4.0;
    }
    if (c.cl_steps) cl->pgd_steps = *c.cl_steps;
    if (c.cl_step_size) cl->pgd_step_size = *c.cl_step_size;
    if (c.patch_size) cl->patch.size = *c.patch_size;
  }
  if (!c.seeds.empty()) config.seeds = c.seeds;
  if (c.forced_selection) config.forced_selection = true;
  if (c.clean_control) config.inject_poisons = false;
  if (c.exclude_target_class) config.exclude_target_class = true;
  if (c.ood_eval) {
    if (*c.ood_eval == "fresh") {
      config.ood_eval = OodEvalProtocol::kFresh;
    } else if (*c.ood_eval == "held_out") {
      config.ood_eval = OodEvalProtocol::kHeldOut;
    } else {
      throw InvalidArgument(fmt::format("unknown OOD evaluation protocol '{}'", *c.ood_eval));
    }
  }
  if (c.max_corruption_tries) config.max_corruption_tries = *c.max_corruption_tries;
  if (c.hidden) config.training.hidden = *c.hidden;
  if (c.learning_rate) config.training.learning_rate = *c.learning_rate;
  if (c.batch_size) config.training.batch_size = *c.batch_size;
  if (c.epochs_per_fit) config.training.epochs_per_fit = *c.epochs_per_fit;
  if (c.pretrain_epochs) config.pretrain_epochs = *c.pretrain_epochs;
  if (c.replay_initial) config.replay_initial = true;
  validate(config.trigger);
  config.validate();
  return config;
}

Dataset load_dataset(const DataOptions& d) {
  if (!d.manifest.empty()) return load_manifest(d.manifest);
  BlobDatasetSpec spec;
  spec.seed = d.data_seed;
  return generate(spec);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError(fmt::format("cannot write {}", path.string()));
  out << text;
}

std::string run_name(const ExperimentConfig& config) {
  const char* mode = !config.inject_poisons ? "clean" : config.forced_selection ? "forced" : "poisoned";
  return fmt::format("{}_g{}_t{}_{}", to_string(config.acquisition), config.ga_generations, config.target_class,
                     mode);
}

void run_one(const World& world, const ExperimentConfig& config, const fs::path& dir, bool record_scores) {
  const auto start = std::chrono::steady_clock::now();
  RunArtifacts artifacts = run_experiment(world, config, record_scores);
  write_run_directory(dir, config, artifacts);
  const auto& last = artifacts.record.epochs.back();
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << fmt::format("{}: acc_id={:.2f} acc_ood={:.2f} asr={:.2f} r_select={} ({:.1f}s)\n", dir.string(),
                           last.acc_id, last.acc_ood, last.asr,
                           last.r_select_cumulative ? fmt::format("{:.2f}", *last.r_select_cumulative) : "n/a",
                           seconds);
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if constexpr (std::is_same_v<T, std::string>) {
      out.push_back(item);
    } else {
      out.push_back(static_cast<T>(std::stoll(item)));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Selection-aware backdoor experiments against pool-based active learning"};
  app.require_subcommand(1);

  BlobDatasetSpec synth_spec;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Generate the synthetic blob dataset");
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--classes", synth_spec.classes);
  synth->add_option("--height", synth_spec.shape.height);
  synth->add_option("--width", synth_spec.shape.width);
  synth->add_option("--channels", synth_spec.shape.channels);
  synth->add_option("--sigma", synth_spec.noise_sigma);
  synth->add_option("--train", synth_spec.train_count);
  synth->add_option("--test", synth_spec.test_count);
  synth->add_option("--pool-source", synth_spec.pool_source_count);
  synth->add_option("--ood-test", synth_spec.ood_test_count);
  synth->add_option("--seed", synth_spec.seed);

  DataOptions data;
  ConfigOptions copts;
  std::string out_dir;
  bool record_scores = false;

  auto* build_pool = app.add_subcommand("build-pool", "Pretrain and build the OOD pool; writes a manifest");
  add_data_options(build_pool, data);
  add_config_options(build_pool, copts);
  build_pool->add_option("--out", out_dir, "Output directory")->required();

  auto* poison = app.add_subcommand("poison", "Build poisons against the pretrained snapshot");
  add_data_options(poison, data);
  add_config_options(poison, copts);
  poison->add_option("--out", out_dir, "Output directory")->required();

  auto* run = app.add_subcommand("run", "Run the AL loop once per seed");
  add_data_options(run, data);
  add_config_options(run, copts);
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_flag("--record-scores", record_scores, "Write per-epoch acquisition scores");

  std::string acquisitions = "entropy,margin,least_confidence,random";
  std::string generations = "0,5,10,15";
  std::string targets;
  bool upper_bound = false;
  bool clean_control = false;
  auto* sweep = app.add_subcommand("sweep", "Run a grid of acquisitions, G values and target classes");
  add_data_options(sweep, data);
  add_config_options(sweep, copts);
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--acquisitions", acquisitions, "Comma-separated acquisitions");
  sweep->add_option("--generation-grid", generations, "Comma-separated G values");
  sweep->add_option("--targets", targets, "Comma-separated target classes (default: --target-class)");
  sweep->add_flag("--upper-bound", upper_bound, "Add a forced-selection run per acquisition at the largest G");
  sweep->add_flag("--with-clean-control", clean_control, "Add a clean-control run per acquisition");

  std::vector<std::string> report_inputs;
  std::string fixture_csv;
  auto* report = app.add_subcommand("report", "Aggregate runs or a curve fixture into tables and figures");
  report->add_option("inputs", report_inputs, "Run or sweep directories");
  report->add_option("--fixture", fixture_csv, "Curve-table CSV to regenerate instead of runs");
  report->add_option("--out", out_dir, "Output directory")->required();

  std::string correlate_csv = fs::path(ALAB_FIXTURE_DIR) / "selection_curves.csv";
  std::string iteration_list = "5,10,15";
  auto* correlate_cmd = app.add_subcommand("correlate", "Pearson r between R_select and ASR curves");
  correlate_cmd->add_option("--fixture", correlate_csv, "Curve-table CSV");
  correlate_cmd->add_option("--iterations", iteration_list, "Comma-separated iteration counts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      const auto manifest = write_dataset(generate(synth_spec), synth_out);
      std::cout << manifest.string() << "\n";
      return 0;
    }

    if (build_pool->parsed()) {
      const ExperimentConfig config = build_config(copts);
      Dataset dataset = load_dataset(data);
      const std::uint64_t seed = config.seeds.front();
      World world = prepare_world(dataset, config, seed);
      dataset.ood_pool_source.assign(world.pool.all().begin(), world.pool.all().end());
      dataset.precorrupted.assign(dataset.ood_pool_source.size(), true);
      const auto manifest = write_dataset(dataset, out_dir);
      nlohmann::json summary = {{"seed", seed},
                                {"pool_size", world.pool.total()},
                                {"skipped", world.ood_skipped},
                                {"acc_id_pretrained", accuracy(*world.snapshot, world.eval.id_test)}};
      write_text(fs::path(out_dir) / "pool_summary.json", summary.dump(2) + "\n");
      std::cout << fmt::format("{}: pool of {} ({} skipped)\n", manifest.string(), world.pool.total(),
                               world.ood_skipped);
      return 0;
    }

    if (poison->parsed()) {
      const ExperimentConfig config = build_config(copts);
      const Dataset dataset = load_dataset(data);
      const std::uint64_t seed = config.seeds.front();
      World world = prepare_world(dataset, config, seed);
      AttackOptions options;
      options.target_class = config.target_class;
      options.poisoning_ratio = config.poisoning_ratio;
      options.generations = config.ga_generations;
      options.ga = config.ga;
      options.trigger = config.trigger;
      options.metric = config.attacker_metric;
      Oracle oracle(world.pool.all());
      PoisonLedger ledger;
      PoisonBuild build = build_poisons(world.pool, options, *world.snapshot, oracle, ledger, seed);
      fs::create_directories(out_dir);
      std::vector<Image> images;
      std::string csv = "poison_id,origin_id,replaced_id,label,trigger\n";
      for (const auto& p : build.poisons) {
        images.push_back(p.image);
        const auto& entry = ledger.lookup(p.id);
        csv += fmt::format("{},{},{},{},{}\n", p.id.value, p.origin_id ? std::to_string(p.origin_id->value) : "",
                           entry.replaced_id ? std::to_string(entry.replaced_id->value) : "", p.true_label,
                           describe(entry.spec));
      }
      write_alat(fs::path(out_dir) / "poisons.alat", dataset.shape, images);
      write_text(fs::path(out_dir) / "poisons.csv", csv);
      std::string traces = "candidate_id,generation,h_max\n";
      for (const auto& t : build.traces) {
        for (std::size_t g = 0; g < t.best_fitness.size(); ++g) {
          traces += fmt::format("{},{},{:.17g}\n", t.candidate_id.value, g, t.best_fitness[g]);
        }
      }
      write_text(fs::path(out_dir) / "traces.csv", traces);
      std::cout << fmt::format("{} poisons, {} attacker label queries\n", build.poisons.size(),
                               build.labels_queried);
      return 0;
    }

    if (run->parsed()) {
      const ExperimentConfig config = build_config(copts);
      const Dataset dataset = load_dataset(data);
      for (std::uint64_t seed : config.seeds) {
        World world = prepare_world(dataset, config, seed);
        run_one(world, config, fs::path(out_dir) / fmt::format("seed_{}", seed), record_scores);
      }
      return 0;
    }

    if (sweep->parsed()) {
      const ExperimentConfig base = build_config(copts);
      const Dataset dataset = load_dataset(data);
      const auto acqs = parse_list<std::string>(acquisitions);
      const auto gens = parse_list<int>(generations);
      auto target_list = targets.empty() ? std::vector<int>{base.target_class} : parse_list<int>(targets);
      for (std::uint64_t seed : base.seeds) {
        World world = prepare_world(dataset, base, seed);
        for (int target : target_list) {
          for (const auto& acq : acqs) {
            std::vector<ExperimentConfig> configs;
            for (int g : gens) {
              ExperimentConfig c = base;
              c.acquisition = parse_acquisition(acq);
              c.target_class = target;
              c.ga_generations = g;
              c.forced_selection = false;
              configs.push_back(c);
            }
            if (upper_bound) {
              ExperimentConfig c = configs.back();
              c.forced_selection = true;
              configs.push_back(c);
            }
            if (clean_control) {
              ExperimentConfig c = configs.front();
              c.inject_poisons = false;
              c.ga_generations = 0;
              configs.push_back(c);
            }
            for (const auto& c : configs) {
              c.validate();
              run_one(world, c, fs::path(out_dir) / run_name(c) / fmt::format("seed_{}", seed), false);
            }
          }
        }
      }
      return 0;
    }

    if (report->parsed()) {
      ReportOutcome outcome;
      if (!fixture_csv.empty()) {
        outcome = emit_fixture_report(CurveTable::load(fixture_csv), out_dir);
      } else {
        if (report_inputs.empty()) throw InvalidArgument("report needs run directories or --fixture");
        std::vector<fs::path> dirs;
        for (const auto& input : report_inputs) {
          auto found = collect_run_dirs(input);
          if (found.empty()) outcome.missing.push_back(fmt::format("{}: no runs found", input));
          dirs.insert(dirs.end(), found.begin(), found.end());
        }
        ReportOutcome emitted = emit_report(dirs, out_dir);
        outcome.written = std::move(emitted.written);
        outcome.missing.insert(outcome.missing.end(), emitted.missing.begin(), emitted.missing.end());
      }
      for (const auto& path : outcome.written) std::cout << path.string() << "\n";
      for (const auto& miss : outcome.missing) std::cerr << "missing: " << miss << "\n";
      return outcome.exit_status();
    }

    if (correlate_cmd->parsed()) {
      const CurveTable table = CurveTable::load(correlate_csv);
      for (const auto& subset : plausible_subsets(parse_list<int>(iteration_list))) {
        const PearsonResult r = correlate(table, subset);
        std::cout << fmt::format("r={:.4f} p={:.3g} n={} {}\n", r.r, r.p_value, r.n, subset.describe());
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
