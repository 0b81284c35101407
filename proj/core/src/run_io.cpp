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
#include "alab/run_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "alab/errors.hpp"
#include "alab/oracle.hpp"
#include "alab/reference_classifier.hpp"

namespace alab {
namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(fmt::format("cannot write {}", path.string()));
  out << text;
  if (!out) throw FormatError(fmt::format("write failed for {}", path.string()));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(fmt::format("cannot open {}", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double parse_double(const std::string& text, const std::filesystem::path& path) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw FormatError(fmt::format("{}: bad number '{}'", path.string(), text));
  }
}

}  // namespace

std::string epochs_csv(const RunRecord& record) {
  std::string out = "epoch,selected,poisons_selected,labeled_size,acc_id,acc_ood,asr,r_select\n";
  for (const auto& e : record.epochs) {
    out += fmt::format("{},{},{},{},{:.6f},{:.6f},{:.6f},{}\n", e.epoch, e.selected.size(), e.poisons_selected,
                       e.labeled_size, e.acc_id, e.acc_ood, e.asr,
                       e.r_select_cumulative ? fmt::format("{:.6f}", *e.r_select_cumulative) : "");
  }
  return out;
}

std::string selections_csv(const RunRecord& record) {
  std::string out = "epoch,id\n";
  for (const auto& e : record.epochs) {
    for (SampleId id : e.selected) out += fmt::format("{},{}\n", e.epoch, id.value);
  }
  return out;
}

void write_run_directory(const std::filesystem::path& directory, const ExperimentConfig& config,
                         const RunArtifacts& artifacts) {
  std::filesystem::create_directories(directory);
  const RunRecord& record = artifacts.record;

  nlohmann::json cfg = config;
  cfg["seed"] = record.seed;
  write_text(directory / "config.json", cfg.dump(2) + "\n");
  write_text(directory / "epochs.csv", epochs_csv(record));
  write_text(directory / "selections.csv", selections_csv(record));

  std::string poisons = "poison_id,origin_id,replaced_id,label,trigger\n";
  for (const auto& p : artifacts.poisons) {
    const auto& entry = artifacts.ledger.lookup(p.id);
    poisons += fmt::format("{},{},{},{},{}\n", p.id.value, p.origin_id ? std::to_string(p.origin_id->value) : "",
                           entry.replaced_id ? std::to_string(entry.replaced_id->value) : "", p.true_label,
                           describe(entry.spec));
  }
  write_text(directory / "poisons.csv", poisons);

  std::string traces = "candidate_id,generation,h_max\n";
  for (const auto& t : artifacts.traces) {
    for (std::size_t g = 0; g < t.best_fitness.size(); ++g) {
      traces += fmt::format("{},{},{:.17g}\n", t.candidate_id.value, g, t.best_fitness[g]);
    }
  }
  write_text(directory / "traces.csv", traces);

  if (!artifacts.scores.empty()) {
    std::string scores = "epoch,id,score,selected\n";
    for (const auto& s : artifacts.scores) {
      scores += fmt::format("{},{},{:.17g},{}\n", s.epoch, s.id.value, s.score, s.selected ? 1 : 0);
    }
    write_text(directory / "scores.csv", scores);
  }

  if (const auto* reference = dynamic_cast<const ReferenceClassifier*>(artifacts.final_model.get())) {
    reference->save(directory / "model.alam");
  }

  nlohmann::json summary;
  summary["seed"] = record.seed;
  summary["pool_size"] = record.pool_size;
  summary["poisons_injected"] = record.poisons_injected;
  summary["initial_labeled"] = record.initial_labeled;
  summary["attacker_labels_queried"] = record.attacker_labels_queried;
  summary["ood_skipped"] = record.ood_skipped;
  summary["epochs"] = record.epochs.size();
  std::size_t acquired = 0;
  for (const auto& e : record.epochs) acquired += e.selected.size();
  summary["labels_acquired"] = acquired;
  summary["label_mismatches"] = count_label_mismatches(artifacts.labeled, artifacts.oracle);
  summary["clean_label_violations"] = count_clean_label_violations(artifacts.poisons, artifacts.ledger);
  if (!record.epochs.empty()) {
    const auto& last = record.epochs.back();
    summary["final"] = {{"acc_id", last.acc_id}, {"acc_ood", last.acc_ood}, {"asr", last.asr}};
    if (last.r_select_cumulative) summary["final"]["r_select"] = *last.r_select_cumulative;
  }
  write_text(directory / "summary.json", summary.dump(2) + "\n");
}

RunSummary read_run_summary(const std::filesystem::path& directory) {
  RunSummary summary;
  summary.directory = directory;
  const auto config_path = directory / "config.json";
  try {
    summary.config = nlohmann::json::parse(read_text(config_path));
    summary.seed = summary.config.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(fmt::format("{}: {}", config_path.string(), e.what()));
  }

  const auto epochs_path = directory / "epochs.csv";
  std::istringstream in(read_text(epochs_path));
  std::string line;
  if (!std::getline(in, line) || line.rfind("epoch,", 0) != 0) {
    throw FormatError(fmt::format("{}: missing header", epochs_path.string()));
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() == 7) f.emplace_back();
    if (f.size() != 8) throw FormatError(fmt::format("{}: bad row '{}'", epochs_path.string(), line));
    summary.acc_id.push_back(parse_double(f[4], epochs_path));
    summary.acc_ood.push_back(parse_double(f[5], epochs_path));
    summary.asr.push_back(parse_double(f[6], epochs_path));
    if (!f[7].empty()) summary.r_select.push_back(parse_double(f[7], epochs_path));
  }
  if (summary.asr.empty()) throw FormatError(fmt::format("{}: no epochs", epochs_path.string()));
  return summary;
}

}  // namespace alab
