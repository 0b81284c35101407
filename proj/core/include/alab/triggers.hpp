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

#include "alab/image.hpp"
#include "alab/ledger.hpp"
#include "alab/model.hpp"
#include "alab/sample.hpp"
#include "alab/trigger_spec.hpp"

namespace alab {

// out(i, j, c) = clip(in(i, j, c) + amplitude * sin(2 pi f j / W)).
Image apply_sig(const Image& image, int frequency, double amplitude);

// Sign-gradient ascent on the cross-entropy of label, projected onto the
// l-inf ball of radius epsilon (0-255 scale) around image and onto [0, 255].
// The rounded result satisfies the bound exactly.
Image pgd_perturb(const Image& image, int label, const Scorer& model, double epsilon, int steps,
                  double step_size);

Image stamp_patch(const Image& image, const PatchSpec& patch);
// True when (row, col) lies inside the patch footprint.
bool in_patch(const Shape& shape, const PatchSpec& patch, int row, int col);

// Poison-time trigger: SIG overlay, or PGD on label followed by the patch.
// model may be null for SIG.
Image trigger_image(const Image& image, int label, const TriggerSpec& spec, const Scorer* model);

// Test-time trigger used for ASR: SIG overlay, or the CL patch alone.
Image apply_test_trigger(const Image& image, const TriggerSpec& spec);

// Triggers a clean sample and registers the poison in the ledger.
Sample apply_trigger(const Sample& sample, const TriggerSpec& spec, const Scorer& model,
                     PoisonLedger& ledger);

// The clean original stored in the ledger, bit-exact.
Sample remove_trigger(const Sample& poisoned, const PoisonLedger& ledger);

}  // namespace alab
