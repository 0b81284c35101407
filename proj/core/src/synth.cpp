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
#include "alab/synth.hpp"

#include <cstdlib>
#include <random>

#include <fmt/format.h>

#include "alab/errors.hpp"
#include "alab/rng.hpp"

namespace alab {
namespace {

constexpr int kPatternAttempts = 100;

std::vector<Sample> make_split(const BlobDatasetSpec& spec, const std::vector<Image>& means, int count,
                               std::uint64_t split_tag, std::uint64_t& next_id) {
  Rng rng = make_rng(spec.seed, {kStreamSynth, split_tag});
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const int label = i % spec.classes;
    const Image& mean = means[static_cast<std::size_t>(label)];
    std::vector<std::uint8_t> pixels(mean.size());
    for (std::size_t p = 0; p < pixels.size(); ++p) {
      const double jitter = spec.noise_sigma > 0.0 ? spec.noise_sigma * noise(rng) : 0.0;
      pixels[p] = quantize(static_cast<double>(mean.pixels()[p]) + jitter);
    }
    samples.push_back(Sample{SampleId{next_id++}, Image(spec.shape, std::move(pixels)), label, false, std::nullopt});
  }
  return samples;
}

}  // namespace

void BlobDatasetSpec::validate() const {
  if (classes < 2) throw InvalidArgument(fmt::format("need at least 2 classes, got {}", classes));
  if (!(noise_sigma >= 0.0)) throw InvalidArgument("noise sigma must be non-negative");
  if (shape.height <= 0 || shape.width <= 0 || (shape.channels != 1 && shape.channels != 3)) {
    throw InvalidArgument(fmt::format("bad image shape {}", shape.to_string()));
  }
  if (pattern_low < 0 || pattern_high > 255 || pattern_low > pattern_high) {
    throw InvalidArgument("mean-pattern range must lie within [0, 255]");
  }
  if (train_count < 0 || test_count < 0 || pool_source_count < 0 || ood_test_count < 0) {
    throw InvalidArgument("split counts must be non-negative");
  }
}

std::vector<Image> class_mean_patterns(const BlobDatasetSpec& spec) {
  spec.validate();
  const double min_distance = 4.0 * spec.noise_sigma * static_cast<double>(spec.shape.size());
  Rng rng = make_rng(spec.seed, {kStreamSynth, 0});
  std::uniform_int_distribution<int> pixel(spec.pattern_low, spec.pattern_high);
  for (int attempt = 0; attempt < kPatternAttempts; ++attempt) {
    std::vector<std::uint8_t> base(spec.shape.size());
    for (auto& p : base) p = static_cast<std::uint8_t>(pixel(rng));
    const Image base_image(spec.shape, std::move(base));
    std::vector<Image> means;
    for (int k = 0; k < spec.classes; ++k) {
      const int dr = k * spec.shape.height / spec.classes;
      const int dc = k * spec.shape.width / spec.classes;
      Image shifted(spec.shape);
      for (int r = 0; r < spec.shape.height; ++r) {
        for (int c = 0; c < spec.shape.width; ++c) {
          for (int ch = 0; ch < spec.shape.channels; ++ch) {
            shifted.at(r, c, ch) =
                base_image.at((r + dr) % spec.shape.height, (c + dc) % spec.shape.width, ch);
          }
        }
      }
      means.push_back(std::move(shifted));
    }
    bool separated = true;
    for (int a = 0; a < spec.classes && separated; ++a) {
      for (int b = a + 1; b < spec.classes && separated; ++b) {
        double l1 = 0.0;
        for (std::size_t p = 0; p < spec.shape.size(); ++p) {
          l1 += std::abs(static_cast<int>(means[a].pixels()[p]) - static_cast<int>(means[b].pixels()[p]));
        }
        separated = l1 > min_distance;
      }
    }
    if (separated) return means;
  }
  throw InvalidArgument(fmt::format("could not draw class means {} apart in L1; widen the pattern range",
                                    min_distance));
}

Dataset generate(const BlobDatasetSpec& spec) {
  const auto means = class_mean_patterns(spec);
  Dataset dataset;
  dataset.num_classes = spec.classes;
  dataset.shape = spec.shape;
  std::uint64_t next_id = 0;
  dataset.id_train = make_split(spec, means, spec.train_count, 1, next_id);
  dataset.id_test = make_split(spec, means, spec.test_count, 2, next_id);
  dataset.ood_pool_source = make_split(spec, means, spec.pool_source_count, 3, next_id);
  dataset.ood_test = make_split(spec, means, spec.ood_test_count, 4, next_id);
  dataset.precorrupted.assign(dataset.ood_pool_source.size(), false);
  return dataset;
}

}  // namespace alab
