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
#include "alab/model.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "alab/errors.hpp"

namespace alab {

ProbVector::ProbVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidArgument("probability vector is empty");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument(fmt::format("probability {} outside [0, 1]", p));
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw InvalidArgument(fmt::format("probabilities sum to {}", sum));
}

ProbVector ProbVector::uniform(int classes) {
  if (classes < 1) throw InvalidArgument("class count must be >= 1");
  return ProbVector(std::vector<double>(static_cast<std::size_t>(classes), 1.0 / classes));
}

int ProbVector::argmax() const {
  return static_cast<int>(std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

std::vector<double> Scorer::input_loss_gradient_unit(std::span<const double>, int) const {
  throw UnsupportedOperation("model does not provide input gradients");
}

void Scorer::check_shape(const Shape& shape) const {
  if (shape != input_shape()) {
    throw InvalidArgument(fmt::format("image shape {} does not match model input {}", shape.to_string(),
                                      input_shape().to_string()));
  }
}

void Scorer::check_size(std::size_t size) const {
  if (size != input_shape().size()) {
    throw InvalidArgument(fmt::format("input has {} values, model expects {}", size, input_shape().size()));
  }
}

ProbVector Scorer::predict_proba(const Image& image) const {
  check_shape(image.shape());
  return predict_unit(image.to_unit());
}

std::vector<ProbVector> Scorer::predict_proba_batch(std::span<const Image> images) const {
  std::vector<ProbVector> out;
  out.reserve(images.size());
  for (const auto& image : images) out.push_back(predict_proba(image));
  return out;
}

std::vector<double> Scorer::input_loss_gradient(const Image& image, int label) const {
  if (!has_input_gradient()) throw UnsupportedOperation("model does not provide input gradients");
  check_shape(image.shape());
  return input_loss_gradient_unit(image.to_unit(), label);
}

double Scorer::loss_unit(std::span<const double> unit_pixels, int label) const {
  ProbVector p = predict_unit(unit_pixels);
  return -std::log(std::max(p[label], 1e-300));
}

}  // namespace alab
