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
#include "alab/acquisition.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "alab/errors.hpp"

namespace alab {

std::string to_string(Acquisition acquisition) {
  switch (acquisition) {
    case Acquisition::kEntropy: return "entropy";
    case Acquisition::kMargin: return "margin";
    case Acquisition::kLeastConfidence: return "least_confidence";
    case Acquisition::kRandom: return "random";
  }
  return "unknown";
}

Acquisition parse_acquisition(std::string_view name) {
  for (Acquisition a : all_acquisitions()) {
    if (to_string(a) == name) return a;
  }
  throw InvalidArgument(fmt::format("unknown acquisition '{}'", name));
}

std::vector<Acquisition> all_acquisitions() {
  return {Acquisition::kRandom, Acquisition::kEntropy, Acquisition::kMargin,
          Acquisition::kLeastConfidence};
}

double entropy(const ProbVector& p) {
  double h = 0.0;
  for (double v : p.values()) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return std::max(h, 0.0);
}

double margin_score(const ProbVector& p) {
  if (p.size() < 2) throw InvalidArgument("margin needs at least two classes");
  double first = -1.0, second = -1.0;
  for (double v : p.values()) {
    if (v > first) {
      second = first;
      first = v;
    } else if (v > second) {
      second = v;
    }
  }
  return 1.0 - (first - second);
}

double least_confidence_score(const ProbVector& p) {
  return 1.0 - *std::max_element(p.values().begin(), p.values().end());
}

double uncertainty(const ProbVector& p, Acquisition acquisition) {
  switch (acquisition) {
    case Acquisition::kEntropy: return entropy(p);
    case Acquisition::kMargin: return margin_score(p);
    case Acquisition::kLeastConfidence: return least_confidence_score(p);
    case Acquisition::kRandom: break;
  }
  throw InvalidArgument("random acquisition has no uncertainty score");
}

std::vector<AcquisitionScore> score_remaining(const UnlabeledPool& pool, const Scorer& model,
                                              Acquisition acquisition) {
  std::vector<AcquisitionScore> scores;
  scores.reserve(pool.remaining_count());
  for (const Sample* s : pool.remaining()) {
    scores.push_back({s->id, uncertainty(model.predict_proba(s->image), acquisition)});
  }
  return scores;
}

std::vector<SampleId> top_k(std::vector<AcquisitionScore> scores, std::size_t k) {
  if (k > scores.size()) {
    throw InvalidArgument(fmt::format("cannot select {} of {} samples", k, scores.size()));
  }
  auto before = [](const AcquisitionScore& a, const AcquisitionScore& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  };
  std::partial_sort(scores.begin(), scores.begin() + static_cast<std::ptrdiff_t>(k), scores.end(), before);
  std::vector<SampleId> ids;
  ids.reserve(k);
  for (std::size_t i = 0; i < k; ++i) ids.push_back(scores[i].id);
  return ids;
}

std::vector<SampleId> select_batch(UnlabeledPool& pool, const Scorer& model, Acquisition acquisition,
                                   std::size_t k, Rng& rng, std::vector<AcquisitionScore>* audit) {
  if (k > pool.remaining_count()) {
    throw InvalidArgument(fmt::format("batch of {} exceeds the {} remaining pool samples", k,
                                      pool.remaining_count()));
  }
  std::vector<SampleId> chosen;
  if (acquisition == Acquisition::kRandom) {
    std::vector<SampleId> ids;
    for (const Sample* s : pool.remaining()) ids.push_back(s->id);
    std::sample(ids.begin(), ids.end(), std::back_inserter(chosen), static_cast<std::ptrdiff_t>(k), rng);
    if (audit) {
      audit->clear();
      for (SampleId id : ids) audit->push_back({id, 0.0});
    }
  } else {
    auto scores = score_remaining(pool, model, acquisition);
    if (audit) *audit = scores;
    chosen = top_k(std::move(scores), k);
  }
  pool.consume(chosen);
  return chosen;
}

}  // namespace alab
