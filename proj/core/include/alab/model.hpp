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

#include <memory>
#include <span>
#include <vector>

#include "alab/image.hpp"
#include "alab/sample.hpp"

namespace alab {

// Per-class probabilities. Entries lie in [0, 1] and sum to 1 within 1e-6.
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> probs);
  static ProbVector uniform(int classes);

  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int k) const { return probs_[static_cast<std::size_t>(k)]; }
  std::span<const double> values() const { return probs_; }
  // Lowest index among ties.
  int argmax() const;

  bool operator==(const ProbVector&) const = default;

 private:
  std::vector<double> probs_;
};

// Read-only classifier interface used for scoring, PGD and metrics.
class Scorer {
 public:
  virtual ~Scorer() = default;

  virtual Shape input_shape() const = 0;
  virtual int num_classes() const = 0;

  // Probabilities for an input on the [0, 1] scale, laid out like Image.
  virtual ProbVector predict_unit(std::span<const double> unit_pixels) const = 0;

  virtual bool has_input_gradient() const { return false; }
  // Gradient of the cross-entropy loss for label w.r.t. the [0, 1] input.
  virtual std::vector<double> input_loss_gradient_unit(std::span<const double> unit_pixels,
                                                       int label) const;

  ProbVector predict_proba(const Image& image) const;
  std::vector<ProbVector> predict_proba_batch(std::span<const Image> images) const;
  std::vector<double> input_loss_gradient(const Image& image, int label) const;
  // Cross-entropy loss -ln p(label).
  double loss_unit(std::span<const double> unit_pixels, int label) const;

 protected:
  void check_shape(const Shape& shape) const;
  void check_size(std::size_t size) const;
};

using ScorerHandle = std::shared_ptr<const Scorer>;

// A trainable classifier. snapshot() returns a frozen scorer that later
// fit_incremental calls do not affect.
class ModelAdapter : public Scorer {
 public:
  // Continues training from the current parameters over everything retained
  // so far plus delta, and retains delta. An empty delta is a no-op.
  virtual void fit_incremental(std::span<const LabeledEntry> delta) = 0;
  // Trains for the given number of passes over entries without retaining them.
  virtual void train(std::span<const LabeledEntry> entries, int epochs) = 0;
  // Adds entries to the retained set without training.
  virtual void remember(std::span<const LabeledEntry> entries) = 0;
  virtual ScorerHandle snapshot() const = 0;
  virtual std::unique_ptr<ModelAdapter> clone() const = 0;
};

}  // namespace alab
