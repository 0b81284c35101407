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
#include "alab/reference_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "alab/checkpoint.hpp"
#include "alab/errors.hpp"

namespace alab {
namespace {

constexpr const char* kBackendTag = "reference-mlp";

struct Activations {
  std::vector<double> centred;
  std::vector<double> hidden;
  std::vector<double> probs;
};

Activations forward(const MlpParameters& p, std::span<const double> unit) {
  const auto d = static_cast<std::size_t>(p.input_dim);
  const auto h = static_cast<std::size_t>(p.hidden);
  const auto k = static_cast<std::size_t>(p.classes);
  Activations act;
  act.centred.resize(d);
  for (std::size_t i = 0; i < d; ++i) act.centred[i] = unit[i] - 0.5;
  act.hidden.resize(h);
  for (std::size_t j = 0; j < h; ++j) {
    const double* row = &p.w1[j * d];
    double a = p.b1[j];
    for (std::size_t i = 0; i < d; ++i) a += row[i] * act.centred[i];
    act.hidden[j] = std::tanh(a);
  }
  std::vector<double> logits(k);
  for (std::size_t c = 0; c < k; ++c) {
    const double* row = &p.w2[c * h];
    double z = p.b2[c];
    for (std::size_t j = 0; j < h; ++j) z += row[j] * act.hidden[j];
    logits[c] = z;
  }
  const double top = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  act.probs.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    act.probs[c] = std::exp(logits[c] - top);
    sum += act.probs[c];
  }
  for (double& v : act.probs) v /= sum;
  return act;
}

// dL/d(hidden pre-activation) for cross-entropy on label.
std::vector<double> hidden_delta(const MlpParameters& p, const Activations& act, int label,
                                 std::vector<double>& output_delta) {
  const auto h = static_cast<std::size_t>(p.hidden);
  const auto k = static_cast<std::size_t>(p.classes);
  output_delta = act.probs;
  output_delta[static_cast<std::size_t>(label)] -= 1.0;
  std::vector<double> delta(h, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    const double* row = &p.w2[c * h];
    for (std::size_t j = 0; j < h; ++j) delta[j] += row[j] * output_delta[c];
  }
  for (std::size_t j = 0; j < h; ++j) delta[j] *= 1.0 - act.hidden[j] * act.hidden[j];
  return delta;
}

void check_label(const MlpParameters& p, int label) {
  if (label < 0 || label >= p.classes) {
    throw InvalidArgument(fmt::format("label {} outside [0, {})", label, p.classes));
  }
}

}  // namespace

ProbVector mlp_predict(const MlpParameters& params, std::span<const double> unit_pixels) {
  return ProbVector(forward(params, unit_pixels).probs);
}

std::vector<double> mlp_input_gradient(const MlpParameters& params, std::span<const double> unit_pixels,
                                       int label) {
  check_label(params, label);
  const auto d = static_cast<std::size_t>(params.input_dim);
  const auto h = static_cast<std::size_t>(params.hidden);
  Activations act = forward(params, unit_pixels);
  std::vector<double> output_delta;
  std::vector<double> delta = hidden_delta(params, act, label, output_delta);
  std::vector<double> grad(d, 0.0);
  for (std::size_t j = 0; j < h; ++j) {
    if (delta[j] == 0.0) continue;
    const double* row = &params.w1[j * d];
    for (std::size_t i = 0; i < d; ++i) grad[i] += row[i] * delta[j];
  }
  return grad;
}

ProbVector MlpSnapshot::predict_unit(std::span<const double> unit_pixels) const {
  check_size(unit_pixels.size());
  return mlp_predict(*params_, unit_pixels);
}

std::vector<double> MlpSnapshot::input_loss_gradient_unit(std::span<const double> unit_pixels,
                                                          int label) const {
  check_size(unit_pixels.size());
  return mlp_input_gradient(*params_, unit_pixels, label);
}

ReferenceClassifier::ReferenceClassifier(Shape input_shape, int classes, TrainingOptions options)
    : shape_(input_shape), options_(options) {
  validate_shape(shape_);
  if (classes < 2) throw InvalidArgument("reference classifier needs at least 2 classes");
  if (options_.hidden < 1) throw InvalidArgument("hidden width must be >= 1");
  if (options_.batch_size < 1) throw InvalidArgument("batch size must be >= 1");
  if (!(options_.learning_rate > 0.0)) throw InvalidArgument("learning rate must be positive");
  const int d = static_cast<int>(shape_.size());
  params_.input_dim = d;
  params_.hidden = options_.hidden;
  params_.classes = classes;
  params_.w1.resize(static_cast<std::size_t>(options_.hidden) * static_cast<std::size_t>(d));
  params_.b1.assign(static_cast<std::size_t>(options_.hidden), 0.0);
  params_.w2.assign(static_cast<std::size_t>(classes) * static_cast<std::size_t>(options_.hidden), 0.0);
  params_.b2.assign(static_cast<std::size_t>(classes), 0.0);
  Rng rng = make_rng(options_.seed, {kStreamModelInit});
  const double limit = std::sqrt(6.0 / (d + options_.hidden));
  std::uniform_real_distribution<double> dist(-limit, limit);
  for (double& w : params_.w1) w = dist(rng);
}

ProbVector ReferenceClassifier::predict_unit(std::span<const double> unit_pixels) const {
  check_size(unit_pixels.size());
  return mlp_predict(params_, unit_pixels);
}

std::vector<double> ReferenceClassifier::input_loss_gradient_unit(std::span<const double> unit_pixels,
                                                                  int label) const {
  check_size(unit_pixels.size());
  return mlp_input_gradient(params_, unit_pixels, label);
}

void ReferenceClassifier::fit_incremental(std::span<const LabeledEntry> delta) {
  if (delta.empty()) return;
  remember(delta);
  run_epochs(memory_, options_.epochs_per_fit);
}

void ReferenceClassifier::remember(std::span<const LabeledEntry> entries) {
  for (const auto& e : entries) {
    check_shape(e.sample().image.shape());
    check_label(params_, e.label());
    memory_.push_back(Example{e.sample().image.to_unit(), e.label()});
  }
}

void ReferenceClassifier::train(std::span<const LabeledEntry> entries, int epochs) {
  if (entries.empty() || epochs <= 0) return;
  std::vector<Example> examples;
  examples.reserve(entries.size());
  for (const auto& e : entries) {
    check_shape(e.sample().image.shape());
    check_label(params_, e.label());
    examples.push_back(Example{e.sample().image.to_unit(), e.label()});
  }
  run_epochs(examples, epochs);
}

void ReferenceClassifier::train_step(const Image& image, int label) {
  check_shape(image.shape());
  check_label(params_, label);
  Example ex{image.to_unit(), label};
  const Example* batch[] = {&ex};
  sgd_batch(batch);
}

void ReferenceClassifier::run_epochs(std::span<const Example> examples, int epochs) {
  const std::uint64_t call = fit_calls_++;
  std::vector<std::size_t> order(examples.size());
  std::vector<const Example*> batch;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng = make_rng(options_.seed, {kStreamTraining, call, static_cast<std::uint64_t>(epoch)});
    std::shuffle(order.begin(), order.end(), rng);
    const auto bs = static_cast<std::size_t>(options_.batch_size);
    for (std::size_t start = 0; start < order.size(); start += bs) {
      batch.clear();
      for (std::size_t i = start; i < std::min(order.size(), start + bs); ++i) {
        batch.push_back(&examples[order[i]]);
      }
      sgd_batch(batch);
    }
  }
}

void ReferenceClassifier::sgd_batch(std::span<const Example* const> batch) {
  MlpParameters& p = params_;
  const auto d = static_cast<std::size_t>(p.input_dim);
  const auto h = static_cast<std::size_t>(p.hidden);
  const auto k = static_cast<std::size_t>(p.classes);
  std::vector<double> gw1(p.w1.size(), 0.0), gb1(h, 0.0), gw2(p.w2.size(), 0.0), gb2(k, 0.0);
  std::vector<double> output_delta;
  for (const Example* ex : batch) {
    Activations act = forward(p, ex->unit);
    std::vector<double> delta = hidden_delta(p, act, ex->label, output_delta);
    for (std::size_t c = 0; c < k; ++c) {
      gb2[c] += output_delta[c];
      double* row = &gw2[c * h];
      for (std::size_t j = 0; j < h; ++j) row[j] += output_delta[c] * act.hidden[j];
    }
    for (std::size_t j = 0; j < h; ++j) {
      if (delta[j] == 0.0) continue;
      gb1[j] += delta[j];
      double* row = &gw1[j * d];
      for (std::size_t i = 0; i < d; ++i) row[i] += delta[j] * act.centred[i];
    }
  }
  const double step = options_.learning_rate / static_cast<double>(batch.size());
  for (std::size_t i = 0; i < p.w1.size(); ++i) p.w1[i] -= step * gw1[i];
  for (std::size_t i = 0; i < h; ++i) p.b1[i] -= step * gb1[i];
  for (std::size_t i = 0; i < p.w2.size(); ++i) p.w2[i] -= step * gw2[i];
  for (std::size_t i = 0; i < k; ++i) p.b2[i] -= step * gb2[i];
}

ScorerHandle ReferenceClassifier::snapshot() const {
  return std::make_shared<MlpSnapshot>(shape_, std::make_shared<const MlpParameters>(params_));
}

std::unique_ptr<ModelAdapter> ReferenceClassifier::clone() const {
  return std::make_unique<ReferenceClassifier>(*this);
}

void ReferenceClassifier::set_parameters(MlpParameters params) {
  const auto d = static_cast<std::size_t>(params.input_dim);
  const auto h = static_cast<std::size_t>(params.hidden);
  const auto k = static_cast<std::size_t>(params.classes);
  if (params.input_dim != params_.input_dim || params.classes != params_.classes ||
      params.w1.size() != h * d || params.b1.size() != h || params.w2.size() != k * h ||
      params.b2.size() != k) {
    throw InvalidArgument("parameter dimensions do not match the classifier");
  }
  params_ = std::move(params);
  options_.hidden = params_.hidden;
}

void ReferenceClassifier::save(const std::filesystem::path& path) const {
  Checkpoint ck;
  ck.backend = kBackendTag;
  ck.metadata = {static_cast<std::uint32_t>(shape_.height), static_cast<std::uint32_t>(shape_.width),
                 static_cast<std::uint32_t>(shape_.channels), static_cast<std::uint32_t>(params_.hidden),
                 static_cast<std::uint32_t>(params_.classes)};
  for (const auto* v : {&params_.w1, &params_.b1, &params_.w2, &params_.b2}) {
    ck.parameters.insert(ck.parameters.end(), v->begin(), v->end());
  }
  write_checkpoint(path, ck);
}

ReferenceClassifier ReferenceClassifier::load(const std::filesystem::path& path, TrainingOptions options) {
  Checkpoint ck = read_checkpoint(path);
  if (ck.backend != kBackendTag) throw FormatError(fmt::format("checkpoint backend is '{}'", ck.backend));
  if (ck.metadata.size() != 5) throw FormatError("reference checkpoint needs 5 metadata fields");
  Shape shape{static_cast<int>(ck.metadata[0]), static_cast<int>(ck.metadata[1]),
              static_cast<int>(ck.metadata[2])};
  options.hidden = static_cast<int>(ck.metadata[3]);
  ReferenceClassifier model(shape, static_cast<int>(ck.metadata[4]), options);
  MlpParameters p = model.parameters();
  std::size_t expected = p.w1.size() + p.b1.size() + p.w2.size() + p.b2.size();
  if (ck.parameters.size() != expected) throw FormatError("checkpoint parameter count mismatch");
  auto it = ck.parameters.begin();
  for (auto* v : {&p.w1, &p.b1, &p.w2, &p.b2}) {
    std::copy(it, it + static_cast<std::ptrdiff_t>(v->size()), v->begin());
    it += static_cast<std::ptrdiff_t>(v->size());
  }
  model.set_parameters(std::move(p));
  return model;
}

}  // namespace alab
