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
#include "alab/report.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include <fmt/format.h>

#include "alab/errors.hpp"
#include "alab/run_io.hpp"
#include "svg.hpp"

namespace alab {
namespace {

struct GroupKey {
  std::string acquisition;
  int generations = 0;
  std::string mode;
  auto operator<=>(const GroupKey&) const = default;
};

struct Accumulator {
  std::vector<double> asr, acc_id, acc_ood, r_select;
  std::size_t runs = 0;
  std::size_t r_runs = 0;

  void add(const RunSummary& run) {
    auto fold = [](std::vector<double>& into, const std::vector<double>& values) {
      if (into.size() < values.size()) into.resize(values.size(), 0.0);
      for (std::size_t i = 0; i < values.size(); ++i) into[i] += values[i];
    };
    fold(asr, run.asr);
    fold(acc_id, run.acc_id);
    fold(acc_ood, run.acc_ood);
    ++runs;
    if (!run.r_select.empty()) {
      fold(r_select, run.r_select);
      ++r_runs;
    }
  }
  static std::vector<double> mean(std::vector<double> sum, std::size_t n) {
    for (auto& v : sum) v /= static_cast<double>(n);
    return sum;
  }
  std::vector<double> mean_asr() const { return mean(asr, runs); }
  std::vector<double> mean_r_select() const { return r_runs ? mean(r_select, r_runs) : std::vector<double>{}; }
};

std::string mode_of(const nlohmann::json& config) {
  if (!config.value("inject_poisons", true)) return "clean";
  return config.value("forced_selection", false) ? "forced" : "poisoned";
}

std::string cell(const std::vector<double>& values, std::size_t i) {
  return i < values.size() ? fmt::format("{:.6f}", values[i]) : "";
}

void write_file(const std::filesystem::path& path, const std::string& text, ReportOutcome& outcome) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(fmt::format("cannot write {}", path.string()));
  out << text;
  outcome.written.push_back(path);
}

std::string format_value(double v) { return fmt::format("{}", v); }

}  // namespace

std::vector<std::filesystem::path> collect_run_dirs(const std::filesystem::path& root) {
  if (std::filesystem::exists(root / "epochs.csv") || std::filesystem::exists(root / "config.json")) return {root};
  std::vector<std::filesystem::path> dirs;
  if (std::filesystem::is_directory(root)) {
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
      if (entry.is_directory() && std::filesystem::exists(entry.path() / "config.json")) {
        dirs.push_back(entry.path());
      }
    }
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

ReportOutcome emit_report(std::span<const std::filesystem::path> run_dirs, const std::filesystem::path& out_dir) {
  ReportOutcome outcome;
  std::map<GroupKey, Accumulator> groups;
  std::map<std::tuple<int, std::string, int, std::string>, std::pair<double, std::size_t>> classwise;
  for (const auto& dir : run_dirs) {
    RunSummary run;
    try {
      run = read_run_summary(dir);
    } catch (const Error& e) {
      outcome.missing.push_back(fmt::format("{}: {}", dir.string(), e.what()));
      continue;
    }
    const std::string acquisition = run.config.value("acquisition", std::string("entropy"));
    const int generations = run.config.value("ga_generations", 0);
    const std::string mode = mode_of(run.config);
    groups[GroupKey{acquisition, generations, mode}].add(run);
    auto& cls = classwise[{run.config.value("target_class", 0), acquisition, generations, mode}];
    cls.first += run.asr.back();
    cls.second += 1;
  }
  std::filesystem::create_directories(out_dir);

  std::string series = "acquisition,generations,mode,epoch,asr,acc_id,acc_ood,r_select,runs\n";
  for (const auto& [key, acc] : groups) {
    const auto asr = acc.mean_asr();
    const auto id = Accumulator::mean(acc.acc_id, acc.runs);
    const auto ood = Accumulator::mean(acc.acc_ood, acc.runs);
    const auto rs = acc.mean_r_select();
    for (std::size_t e = 0; e < asr.size(); ++e) {
      series += fmt::format("{},{},{},{},{},{},{},{},{}\n", key.acquisition, key.generations, key.mode, e,
                            cell(asr, e), cell(id, e), cell(ood, e), cell(rs, e), acc.runs);
    }
  }
  write_file(out_dir / "series.csv", series, outcome);

  std::vector<std::string> acquisitions;
  std::set<int> generation_set;
  for (const auto& [key, acc] : groups) {
    if (std::find(acquisitions.begin(), acquisitions.end(), key.acquisition) == acquisitions.end()) {
      acquisitions.push_back(key.acquisition);
    }
    if (key.mode == "poisoned") generation_set.insert(key.generations);
  }
  const std::vector<int> gens(generation_set.begin(), generation_set.end());

  std::string header = "acquisition";
  for (int g : gens) header += fmt::format(",G={}", g);
  std::string rtable = "acquisition,epoch";
  for (int g : gens) rtable += fmt::format(",G={}", g);
  rtable += "\n";
  std::string ftable = header + ",upper_bound\n";
  for (const auto& acquisition : acquisitions) {
    std::size_t epochs = 0;
    for (const auto& [key, acc] : groups) {
      if (key.acquisition == acquisition) epochs = std::max(epochs, acc.asr.size());
    }
    for (std::size_t e : {std::size_t{0}, epochs ? epochs - 1 : 0}) {
      rtable += fmt::format("{},{}", acquisition, e);
      for (int g : gens) {
        auto it = groups.find(GroupKey{acquisition, g, "poisoned"});
        rtable += "," + (it == groups.end() ? std::string() : cell(it->second.mean_r_select(), e));
      }
      rtable += "\n";
      if (epochs <= 1) break;
    }
    ftable += acquisition;
    for (int g : gens) {
      auto it = groups.find(GroupKey{acquisition, g, "poisoned"});
      ftable += ",";
      if (it != groups.end()) ftable += fmt::format("{:.6f}", it->second.mean_asr().back());
    }
    double upper = 0.0;
    std::size_t upper_runs = 0;
    for (const auto& [key, acc] : groups) {
      if (key.acquisition == acquisition && key.mode == "forced") {
        upper += acc.mean_asr().back() * static_cast<double>(acc.runs);
        upper_runs += acc.runs;
      }
    }
    ftable += upper_runs ? fmt::format(",{:.6f}\n", upper / static_cast<double>(upper_runs)) : ",\n";
  }
  write_file(out_dir / "r_select_table.csv", rtable, outcome);
  write_file(out_dir / "final_asr_table.csv", ftable, outcome);

  std::string cw = "target_class,acquisition,generations,mode,final_asr,runs\n";
  std::set<int> classes;
  for (const auto& [key, value] : classwise) {
    const auto& [target, acquisition, generations, mode] = key;
    classes.insert(target);
    cw += fmt::format("{},{},{},{},{:.6f},{}\n", target, acquisition, generations, mode,
                      value.first / static_cast<double>(value.second), value.second);
  }
  write_file(out_dir / "classwise_asr.csv", cw, outcome);

  for (const auto& acquisition : acquisitions) {
    std::vector<svg::Series> asr_lines, rs_lines;
    for (const auto& [key, acc] : groups) {
      if (key.acquisition != acquisition) continue;
      const std::string name = key.mode == "clean" ? "clean" : fmt::format("{}G={}", key.mode == "forced" ? "upper bound " : "", key.generations);
      asr_lines.push_back({name, acc.mean_asr(), key.mode == "forced"});
      if (key.mode == "poisoned") rs_lines.push_back({name, acc.mean_r_select(), false});
    }
    write_file(out_dir / fmt::format("asr_{}.svg", acquisition),
               svg::line_chart(fmt::format("ASR, {} acquisition", acquisition), "AL epoch", "ASR (%)", asr_lines),
               outcome);
    if (!rs_lines.empty()) {
      write_file(out_dir / fmt::format("r_select_{}.svg", acquisition),
                 svg::line_chart(fmt::format("R_select, {} acquisition", acquisition), "AL epoch",
                                 "cumulative R_select (%)", rs_lines),
                 outcome);
    }
  }

  std::vector<std::string> categories;
  for (int c : classes) categories.push_back(std::to_string(c));
  std::map<std::string, svg::Series> bars;
  for (const auto& [key, value] : classwise) {
    const auto& [target, acquisition, generations, mode] = key;
    const std::string name = fmt::format("{} {} G={}", acquisition, mode, generations);
    auto& s = bars[name];
    s.name = name;
    const auto pos = static_cast<std::size_t>(std::distance(classes.begin(), classes.find(target)));
    if (s.values.size() <= pos) s.values.resize(classes.size(), 0.0);
    s.values[pos] = value.first / static_cast<double>(value.second);
  }
  std::vector<svg::Series> bar_series;
  for (auto& [name, s] : bars) bar_series.push_back(std::move(s));
  write_file(out_dir / "classwise_asr.svg", svg::bar_chart("Final ASR by target class", categories, bar_series),
             outcome);
  return outcome;
}

ReportOutcome emit_fixture_report(const CurveTable& table, const std::filesystem::path& out_dir) {
  ReportOutcome outcome;
  std::filesystem::create_directories(out_dir);
  std::string csv = "iteration,acquisition,metric";
  for (std::size_t e = 0; e < table.epochs(); ++e) csv += fmt::format(",e{}", e);
  csv += "\n";
  for (const auto& row : table.rows) {
    csv += fmt::format("{},{},{}", row.iteration, row.acquisition, row.metric);
    for (double v : row.values) csv += "," + format_value(v);
    csv += "\n";
  }
  write_file(out_dir / "curves.csv", csv, outcome);
  for (int iteration : table.iterations()) {
    for (const char* metric : {"r_select", "asr"}) {
      std::vector<svg::Series> lines;
      for (const auto& row : table.rows) {
        if (row.iteration == iteration && row.metric == metric) lines.push_back({row.acquisition, row.values, false});
      }
      write_file(out_dir / fmt::format("{}_iter{}.svg", metric, iteration),
                 svg::line_chart(fmt::format("{} at {} iterations", metric, iteration), "AL epoch",
                                 fmt::format("{} (%)", metric), lines),
                 outcome);
    }
  }
  return outcome;
}

}  // namespace alab
