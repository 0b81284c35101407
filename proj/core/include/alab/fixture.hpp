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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "alab/stats.hpp"

namespace alab {

// Per-epoch selection-rate / ASR curves keyed by optimisation iterations and
// acquisition. CSV columns: iteration,acquisition,metric,e0..eN with metric
// in {r_select, asr}.
struct CurveRow {
  int iteration = 0;
  std::string acquisition;
  std::string metric;
  std::vector<double> values;
};

struct CurveTable {
  std::vector<CurveRow> rows;

  static CurveTable parse(std::string_view csv);
  static CurveTable load(const std::filesystem::path& path);
  const CurveRow& find(int iteration, std::string_view acquisition, std::string_view metric) const;
  std::vector<int> iterations() const;
  std::vector<std::string> acquisitions() const;
  std::size_t epochs() const;
};

struct CorrelationSubset {
  std::vector<int> iterations{5, 10, 15};
  bool include_random = true;
  bool include_epoch0 = true;

  std::string describe() const;
};

// Pairs (r_select, asr) over every selected row and epoch.
PearsonResult correlate(const CurveTable& table, const CorrelationSubset& subset);

// {+/- random rows} x {+/- epoch 0} for the given iteration set.
std::vector<CorrelationSubset> plausible_subsets(const std::vector<int>& iterations);

}  // namespace alab
