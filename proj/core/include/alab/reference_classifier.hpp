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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <vector>

#include "alab/model.hpp"
#include "alab/rng.hpp"

namespace alab {

struct TrainingOptions {
  int hidden = 32;
  double learning_rate = 0.1;
  int batch_size = 16;
  // Passes over the retained training data per fit_incremental call.
  int epochs_per_fit = 10;
  std::uint64_t seed = 0;

  bool operator==(const TrainingOptions&) const = default;
};

// Parameters of the affine -> tanh -> affine -> softmax network.
// Inputs are centred (x - 0.5) before the first layer.
struct MlpParameters {
  int input_dim = 0;
  int hidden = 0;
  int classes = 0;
  std::vector<double> w1;  // hidden x input_dim
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // classes x hidden
  std::vector<double> b2;  // classes

  bool operator==(const MlpParameters&) const = default;
};

// Forward pass on a [0, 1] input.
ProbVector mlp_predict(const MlpParameters& params, std::span<const double> unit_pixels);
// Cross-entropy gradient w.r.t. the [0, 1] input.
std::vector<double> mlp_input_gradient(const MlpParameters& params,
                                       std::span<const double> unit_pixels, int label);

// Frozen scorer over a parameter copy.
class MlpSnapshot final : public Scorer {
 public:
  MlpSnapshot(Shape shape, std::shared_ptr<const MlpParameters> params)
      : shape_(shape), params_(std::move(params)) {}

  Shape input_shape() const override { return shape_; }
  int num_classes() const override { return params_->classes; }
  ProbVector predict_unit(std::span<const double> unit_pixels) const override;
  bool has_input_gradient() const override { return true; }
  std::vector<double> input_loss_gradient_unit(std::span<const double> unit_pixels,
                                               int label) const override;
  const MlpParameters& parameters() const { return *params_; }

 private:
  Shape shape_;
  std::shared_ptr<const MlpParameters> params_;
};

// Small built-in classifier trained with plain mini-batch gradient descent.
// The first layer starts from a seeded Xavier-uniform draw, the output layer
// at zero, so an untrained model predicts the uniform distribution.
class ReferenceClassifier final : public ModelAdapter {
 public:
  ReferenceClassifier(Shape input_shape, int classes, TrainingOptions options = {});

  Shape input_shape() const override { return shape_; }
  int num_classes() const override { return params_.classes; }
  ProbVector predict_unit(std::span<const double> unit_pixels) const override;
  bool has_input_gradient() const override { return true; }
  std::vector<double> input_loss_gradient_unit(std::span<const double> unit_pixels,
                                               int label) const override;

  // Appends delta to the retained set and trains epochs_per_fit passes over it.
  void fit_incremental(std::span<const LabeledEntry> delta) override;
  void train(std::span<const LabeledEntry> entries, int epochs) override;
  void remember(std::span<const LabeledEntry> entries) override;
  ScorerHandle snapshot() const override;
  std::unique_ptr<ModelAdapter> clone() const override;

  // One gradient step on a single example; used to saturate in tests.
  void train_step(const Image& image, int label);

  const MlpParameters& parameters() const { return params_; }
  void set_parameters(MlpParameters params);
  const TrainingOptions& options() const { return options_; }
  std::size_t retained_count() const { return memory_.size(); }

  void save(const std::filesystem::path& path) const;
  static ReferenceClassifier load(const std::filesystem::path& path, TrainingOptions options = {});

 private:
  struct Example {
    std::vector<double> unit;
    int label;
  };
  void run_epochs(std::span<const Example> examples, int epochs);
  void sgd_batch(std::span<const Example* const> batch);

  Shape shape_;
  TrainingOptions options_;
  MlpParameters params_;
  std::vector<Example> memory_;
  std::uint64_t fit_calls_ = 0;
};

}  // namespace alab
