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
#include <string>
#include <variant>

#include <nlohmann/json_fwd.hpp>

namespace alab {

enum class Corner { kTopLeft, kTopRight, kBottomLeft, kBottomRight };

// Square checkerboard stamped after PGD by the CL trigger.
struct PatchSpec {
  int size = 3;
  Corner corner = Corner::kBottomRight;
  std::uint8_t low = 0;
  std::uint8_t high = 255;

  bool operator==(const PatchSpec&) const = default;
};

// Sinusoidal overlay: offset(j) = amplitude * sin(2*pi*frequency*j / width).
struct SigTrigger {
  int frequency = 6;
  double amplitude = 50.0;

  bool operator==(const SigTrigger&) const = default;
};

// PGD perturbation within an l-inf ball (0-255 scale) followed by a patch.
struct ClTrigger {
  double epsilon = 32.0;
  int pgd_steps = 10;
  double pgd_step_size = 8.0;
  PatchSpec patch;

  bool operator==(const ClTrigger&) const = default;
};

using TriggerSpec = std::variant<SigTrigger, ClTrigger>;

void validate(const TriggerSpec& spec);
std::string describe(const TriggerSpec& spec);

void to_json(nlohmann::json& j, const TriggerSpec& spec);
void from_json(const nlohmann::json& j, TriggerSpec& spec);

}  // namespace alab
