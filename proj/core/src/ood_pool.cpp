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
#include "alab/ood_pool.hpp"

#include <fmt/format.h>

#include "alab/errors.hpp"

namespace alab {

std::optional<Sample> corrupt_until_misclassified(const Sample& sample, const Scorer& model,
                                                  std::span<const CorruptionKind> corruptions,
                                                  int max_tries, Rng& rng) {
  if (max_tries < 1) throw InvalidArgument("max_tries must be >= 1");
  if (corruptions.empty()) throw InvalidArgument("corruption set is empty");
  std::uniform_int_distribution<std::size_t> pick_kind(0, corruptions.size() - 1);
  std::uniform_int_distribution<int> pick_severity(1, 5);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    CorruptionOp op{corruptions[pick_kind(rng)], 0};
    op.severity = pick_severity(rng);
    Image corrupted = apply_corruption(sample.image, op, rng);
    if (model.predict_proba(corrupted).argmax() != sample.true_label) {
      Sample out = sample;
      out.image = std::move(corrupted);
      return out;
    }
  }
  return std::nullopt;
}

OodPoolBuild build_ood_pool(std::span<const Sample> source, const Scorer& model,
                            const OodPoolOptions& options, const std::vector<bool>& precorrupted) {
  if (source.empty()) throw InvalidArgument("OOD pool source is empty");
  if (!precorrupted.empty() && precorrupted.size() != source.size()) {
    throw InvalidArgument("precorrupted flags must match the source size");
  }
  std::vector<Sample> admitted;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < source.size(); ++i) {
    const Sample& s = source[i];
    if (!precorrupted.empty() && precorrupted[i]) {
      if (model.predict_proba(s.image).argmax() != s.true_label) {
        admitted.push_back(s);
      } else {
        ++skipped;
      }
      continue;
    }
    Rng rng = make_rng(options.seed, {kStreamOodPool, s.id.value});
    auto result = corrupt_until_misclassified(s, model, options.corruptions, options.max_tries, rng);
    if (result) {
      admitted.push_back(std::move(*result));
    } else {
      ++skipped;
    }
  }
  if (admitted.empty()) {
    throw EmptyPoolError(fmt::format("no OOD sample admitted out of {} sources", source.size()));
  }
  return OodPoolBuild{UnlabeledPool(std::move(admitted)), skipped};
}

std::vector<Sample> corrupt_fresh(std::span<const Sample> source,
                                  std::span<const CorruptionKind> corruptions, std::uint64_t seed) {
  if (corruptions.empty()) throw InvalidArgument("corruption set is empty");
  std::vector<Sample> out;
  out.reserve(source.size());
  for (const Sample& s : source) {
    Rng rng = make_rng(seed, {kStreamOodEval, s.id.value});
    std::uniform_int_distribution<std::size_t> pick_kind(0, corruptions.size() - 1);
    std::uniform_int_distribution<int> pick_severity(1, 5);
    CorruptionOp op{corruptions[pick_kind(rng)], 0};
    op.severity = pick_severity(rng);
    Sample c = s;
    c.image = apply_corruption(s.image, op, rng);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace alab
