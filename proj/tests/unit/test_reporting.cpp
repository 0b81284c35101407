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

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "alab/errors.hpp"
#include "alab/experiment.hpp"
#include "alab/fixture.hpp"
#include "alab/metrics.hpp"
#include "alab/report.hpp"
#include "alab/run_io.hpp"
#include "alab/stats.hpp"
#include "alab/triggers.hpp"
#include "synthetic_world.hpp"
#include "temp_dir.hpp"
#include "test_models.hpp"

namespace alab {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

RunRecord record_with_selection(std::size_t injected, std::vector<std::size_t> cumulative) {
  RunRecord run;
  run.poisons_injected = injected;
  for (std::size_t e = 0; e < cumulative.size(); ++e) {
    EpochRecord epoch;
    epoch.epoch = static_cast<int>(e);
    epoch.poisons_selected = cumulative[e] - (e == 0 ? 0 : cumulative[e - 1]);
    if (injected > 0) epoch.r_select_cumulative = 100.0 * static_cast<double>(cumulative[e]) / static_cast<double>(injected);
    run.epochs.push_back(epoch);
  }
  return run;
}

TEST(RSelect, Percentage) {
  const auto run = record_with_selection(50, {2, 5});
  EXPECT_DOUBLE_EQ(r_select(run, 0), 4.0);
  EXPECT_DOUBLE_EQ(r_select(run, 1), 10.0);
  EXPECT_THROW(r_select(record_with_selection(0, {0}), 0), UndefinedMetric);
}

std::vector<Sample> random_eval(std::size_t n, int classes, std::mt19937_64& gen) {
  std::vector<Sample> eval;
  for (std::size_t i = 0; i < n; ++i) {
    Image image(Shape{4, 4, 1});
    for (auto& p : image.pixels()) p = static_cast<std::uint8_t>(gen() % 256);
    eval.push_back(Sample{SampleId{i}, image, static_cast<int>(i % static_cast<std::size_t>(classes)), false, std::nullopt});
  }
  return eval;
}

TEST(AttackSuccessRate, ConstantPredictions) {
  std::mt19937_64 gen(1);
  const auto eval = random_eval(40, 4, gen);
  const testing::ConstantScorer always_two(Shape{4, 4, 1}, testing::one_hot(4, 2));
  EXPECT_DOUBLE_EQ(attack_success_rate(always_two, eval, SigTrigger{}, 2), 100.0);
  EXPECT_DOUBLE_EQ(attack_success_rate(always_two, eval, SigTrigger{}, 0), 0.0);
  EXPECT_DOUBLE_EQ(attack_success_rate(always_two, eval, SigTrigger{}, 2, true), 100.0);
  EXPECT_THROW(attack_success_rate(always_two, std::vector<Sample>{}, SigTrigger{}, 2), InvalidArgument);
  std::vector<Sample> only_target;
  for (const auto& s : eval) {
    if (s.true_label == 2) only_target.push_back(s);
  }
  EXPECT_THROW(attack_success_rate(always_two, only_target, SigTrigger{}, 2, true), InvalidArgument);
}

TEST(AttackSuccessRate, MatchesDefinitionalLoop) {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> w(4 * 16), b(4);
  for (auto& v : w) v = n(gen);
  for (auto& v : b) v = n(gen);
  const testing::LinearSoftmax model(Shape{4, 4, 1}, 4, w, b);
  const auto eval = random_eval(200, 4, gen);
  for (bool exclude : {false, true}) {
    std::size_t hits = 0, total = 0;
    for (const auto& s : eval) {
      if (exclude && s.true_label == 1) continue;
      ++total;
      hits += model.predict_proba(apply_test_trigger(s.image, SigTrigger{})).argmax() == 1 ? 1 : 0;
    }
    EXPECT_DOUBLE_EQ(attack_success_rate(model, eval, SigTrigger{}, 1, exclude),
                     100.0 * static_cast<double>(hits) / static_cast<double>(total));
  }
}

TEST(Accuracy, AllOrNothing) {
  std::mt19937_64 gen(3);
  auto eval = random_eval(12, 3, gen);
  for (auto& s : eval) s.true_label = 1;
  EXPECT_DOUBLE_EQ(accuracy(testing::ConstantScorer(Shape{4, 4, 1}, testing::one_hot(3, 1)), eval), 100.0);
  EXPECT_DOUBLE_EQ(accuracy(testing::ConstantScorer(Shape{4, 4, 1}, testing::one_hot(3, 0)), eval), 0.0);
}

TEST(Pearson, PerfectLines) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> up, down;
  for (double v : x) {
    up.push_back(2 * v + 1);
    down.push_back(-v);
  }
  EXPECT_NEAR(pearson(x, up).r, 1.0, 1e-15);
  EXPECT_EQ(pearson(x, up).p_value, 0.0);
  EXPECT_NEAR(pearson(x, down).r, -1.0, 1e-15);
  EXPECT_EQ(pearson(x, up).n, 5u);
}

TEST(Pearson, MatchesDefinition) {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> x(60), y(60);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = n(gen);
    y[i] = 0.4 * x[i] + n(gen);
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= 60;
  my /= 60;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  const auto result = pearson(x, y);
  EXPECT_NEAR(result.r, sxy / std::sqrt(sxx * syy), 1e-12);
  EXPECT_GT(result.p_value, 0.0);
  EXPECT_LT(result.p_value, 0.05);
}

TEST(Pearson, UndefinedInputs) {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<double> flat{2, 2, 2, 2};
  EXPECT_THROW(pearson(x, flat), UndefinedMetric);
  EXPECT_THROW(pearson(std::vector<double>{1, 2}, std::vector<double>{3, 4}), InvalidArgument);
  EXPECT_THROW(pearson(x, std::vector<double>{1, 2, 3}), InvalidArgument);
}

TEST(FixtureReport, RegeneratesTheCurves) {
  testing::TempDir dir;
  const auto table = CurveTable::load(fs::path(ALAB_FIXTURE_DIR) / "selection_curves.csv");
  const auto outcome = emit_fixture_report(table, dir.path());
  EXPECT_EQ(outcome.exit_status(), 0);
  const auto again = CurveTable::load(dir.path() / "curves.csv");
  ASSERT_EQ(again.rows.size(), table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    EXPECT_EQ(again.rows[i].iteration, table.rows[i].iteration);
    EXPECT_EQ(again.rows[i].acquisition, table.rows[i].acquisition);
    EXPECT_EQ(again.rows[i].metric, table.rows[i].metric);
    EXPECT_EQ(again.rows[i].values, table.rows[i].values);
  }
  for (int iteration : table.iterations()) {
    EXPECT_TRUE(fs::exists(dir.path() / ("asr_iter" + std::to_string(iteration) + ".svg")));
    EXPECT_TRUE(fs::exists(dir.path() / ("r_select_iter" + std::to_string(iteration) + ".svg")));
  }
}

class RunReport : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    world_ = new World(testing::default_world(0));
    root_ = new testing::TempDir();
    ExperimentConfig config;
    config.ga_generations = 1;
    config.ga.population_size = 6;
    write_run_directory(root_->path() / "runs" / "poisoned", config, run_experiment(*world_, config));
    config.inject_poisons = false;
    write_run_directory(root_->path() / "runs" / "clean", config, run_experiment(*world_, config));
  }
  static void TearDownTestSuite() {
    delete root_;
    delete world_;
  }
  static World* world_;
  static testing::TempDir* root_;
};
World* RunReport::world_ = nullptr;
testing::TempDir* RunReport::root_ = nullptr;

TEST_F(RunReport, WritesTablesAndFigures) {
  const auto dirs = collect_run_dirs(root_->path() / "runs");
  ASSERT_EQ(dirs.size(), 2u);
  const auto out = root_->path() / "report_a";
  const auto outcome = emit_report(dirs, out);
  EXPECT_EQ(outcome.exit_status(), 0);
  for (const char* name : {"series.csv", "r_select_table.csv", "final_asr_table.csv", "classwise_asr.csv",
                           "asr_entropy.svg", "r_select_entropy.svg", "classwise_asr.svg"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }
  const std::string series = slurp(out / "series.csv");
  EXPECT_NE(series.find("clean"), std::string::npos);
  EXPECT_NE(series.find("poisoned"), std::string::npos);
}

TEST_F(RunReport, ByteIdenticalOnRerun) {
  const auto dirs = collect_run_dirs(root_->path() / "runs");
  const auto a = root_->path() / "report_b";
  const auto b = root_->path() / "report_c";
  emit_report(dirs, a);
  emit_report(dirs, b);
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
    ++compared;
  }
  EXPECT_GE(compared, 7u);
}

TEST_F(RunReport, MissingRunDirectoryIsReported) {
  auto dirs = collect_run_dirs(root_->path() / "runs");
  dirs.push_back(root_->path() / "runs" / "does_not_exist");
  const auto outcome = emit_report(dirs, root_->path() / "report_d");
  EXPECT_NE(outcome.exit_status(), 0);
  ASSERT_EQ(outcome.missing.size(), 1u);
}

TEST_F(RunReport, SummaryRoundTrip) {
  const auto summary = read_run_summary(root_->path() / "runs" / "poisoned");
  EXPECT_EQ(summary.seed, 0u);
  EXPECT_EQ(summary.asr.size(), 10u);
  EXPECT_EQ(summary.r_select.size(), 10u);
  EXPECT_TRUE(read_run_summary(root_->path() / "runs" / "clean").r_select.empty());
}

}  // namespace
}  // namespace alab
