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
#include <span>

namespace alab {

struct PearsonResult {
  double r = 0.0;
  // Two-sided, Student t with n - 2 degrees of freedom.
  double p_value = 1.0;
  std::size_t n = 0;
};

// Requires equal lengths >= 3 and non-constant series.
PearsonResult pearson(std::span<const double> xs, std::span<const double> ys);

}  // namespace alab
