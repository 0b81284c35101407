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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "alab/model.hpp"
#include "alab/rng.hpp"
#include "alab/sample.hpp"

namespace alab {

enum class Acquisition { kEntropy, kMargin, kLeastConfidence, kRandom };

std::string to_string(Acquisition acquisition);
Acquisition parse_acquisition(std::string_view name);
std::vector<Acquisition> all_acquisitions();

// -sum p ln p with 0 ln 0 = 0.
double entropy(const ProbVector& p);
// 1 - (p_(1) - p_(2)); requires at least two classes.
double margin_score(const ProbVector& p);
// 1 - max p.
double least_confidence_score(const ProbVector& p);
// Score for an uncertainty acquisition, oriented so higher = selected first.
double uncertainty(const ProbVector& p, Acquisition acquisition);

struct AcquisitionScore {
  SampleId id;
  double score = 0.0;
};

std::vector<AcquisitionScore> score_remaining(const UnlabeledPool& pool, const Scorer& model,
                                              Acquisition acquisition);

// The k highest scores, ties broken by ascending id, in selection order.
std::vector<SampleId> top_k(std::vector<AcquisitionScore> scores, std::size_t k);

// Picks k remaining ids and moves them to the consumed set. Uncertainty
// acquisitions are deterministic given the model and pool; kRandom draws
// uniformly without replacement from rng. When audit is given, it receives
// the score of every remaining sample (random: all zero).
std::vector<SampleId> select_batch(UnlabeledPool& pool, const Scorer& model,
                                   Acquisition acquisition, std::size_t k, Rng& rng,
                                   std::vector<AcquisitionScore>* audit = nullptr);

}  // namespace alab
