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
#include "alab/triggers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "alab/errors.hpp"

namespace alab {
namespace {

std::string corner_name(Corner c) {
  switch (c) {
    case Corner::kTopLeft: return "top_left";
    case Corner::kTopRight: return "top_right";
    case Corner::kBottomLeft: return "bottom_left";
    case Corner::kBottomRight: return "bottom_right";
  }
  return "bottom_right";
}

Corner parse_corner(const std::string& name) {
  for (Corner c : {Corner::kTopLeft, Corner::kTopRight, Corner::kBottomLeft, Corner::kBottomRight}) {
    if (corner_name(c) == name) return c;
  }
  throw InvalidArgument(fmt::format("unknown patch corner '{}'", name));
}

double sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

void validate(const TriggerSpec& spec) {
  if (const auto* sig = std::get_if<SigTrigger>(&spec)) {
    if (sig->frequency < 1) throw InvalidArgument("SIG frequency must be >= 1");
    if (!(sig->amplitude > 0.0)) throw InvalidArgument("SIG amplitude must be > 0");
  } else {
    const auto& cl = std::get<ClTrigger>(spec);
    if (!(cl.epsilon >= 0.0)) throw InvalidArgument("CL epsilon must be >= 0");
    if (cl.pgd_steps < 0) throw InvalidArgument("CL pgd_steps must be >= 0");
    if (!(cl.pgd_step_size >= 0.0)) throw InvalidArgument("CL pgd_step_size must be >= 0");
    if (cl.patch.size < 0) throw InvalidArgument("patch size must be >= 0");
  }
}

std::string describe(const TriggerSpec& spec) {
  if (const auto* sig = std::get_if<SigTrigger>(&spec)) {
    return fmt::format("sig(f={},delta={})", sig->frequency, sig->amplitude);
  }
  const auto& cl = std::get<ClTrigger>(spec);
  return fmt::format("cl(eps={},steps={},step={},patch={})", cl.epsilon, cl.pgd_steps, cl.pgd_step_size,
                     cl.patch.size);
}

void to_json(nlohmann::json& j, const TriggerSpec& spec) {
  if (const auto* sig = std::get_if<SigTrigger>(&spec)) {
    j = {{"type", "sig"}, {"frequency", sig->frequency}, {"amplitude", sig->amplitude}};
    return;
  }
  const auto& cl = std::get<ClTrigger>(spec);
  j = {{"type", "cl"},
       {"epsilon", cl.epsilon},
       {"pgd_steps", cl.pgd_steps},
       {"pgd_step_size", cl.pgd_step_size},
       {"patch",
        {{"size", cl.patch.size},
         {"corner", corner_name(cl.patch.corner)},
         {"low", cl.patch.low},
         {"high", cl.patch.high}}}};
}

void from_json(const nlohmann::json& j, TriggerSpec& spec) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "sig") {
    SigTrigger sig;
    sig.frequency = j.value("frequency", sig.frequency);
    sig.amplitude = j.value("amplitude", sig.amplitude);
    spec = sig;
  } else if (type == "cl") {
    ClTrigger cl;
    cl.epsilon = j.value("epsilon", cl.epsilon);
    cl.pgd_steps = j.value("pgd_steps", cl.pgd_steps);
    cl.pgd_step_size = j.value("pgd_step_size", cl.epsilon / 4.0);
    if (j.contains("patch")) {
      const auto& p = j.at("patch");
      cl.patch.size = p.value("size", cl.patch.size);
      cl.patch.corner = parse_corner(p.value("corner", std::string("bottom_right")));
      cl.patch.low = p.value("low", cl.patch.low);
      cl.patch.high = p.value("high", cl.patch.high);
    }
    spec = cl;
  } else {
    throw InvalidArgument(fmt::format("unknown trigger type '{}'", type));
  }
  validate(spec);
}

Image apply_sig(const Image& image, int frequency, double amplitude) {
  validate(TriggerSpec{SigTrigger{frequency, amplitude}});
  const int w = image.width();
  std::vector<double> offset(static_cast<std::size_t>(w));
  for (int j = 0; j < w; ++j) {
    offset[static_cast<std::size_t>(j)] =
        amplitude * std::sin(2.0 * std::numbers::pi * frequency * j / static_cast<double>(w));
  }
  std::vector<double> out(image.size());
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < image.channels(); ++k) {
        out[image.index(r, c, k)] = image.at(r, c, k) + offset[static_cast<std::size_t>(c)];
      }
    }
  }
  return Image::from_real(image.shape(), out);
}

Image pgd_perturb(const Image& image, int label, const Scorer& model, double epsilon, int steps,
                  double step_size) {
  if (!model.has_input_gradient()) throw UnsupportedOperation("PGD requires input gradients");
  if (epsilon < 0.0 || steps < 0 || step_size < 0.0) throw InvalidArgument("invalid PGD parameters");
  if (epsilon == 0.0 || steps == 0) return image;
  const auto original = image.to_real();
  auto x = original;
  std::vector<double> unit(x.size());
  for (int step = 0; step < steps; ++step) {
    for (std::size_t i = 0; i < x.size(); ++i) unit[i] = x[i] / 255.0;
    const auto grad = model.input_loss_gradient_unit(unit, label);
    for (std::size_t i = 0; i < x.size(); ++i) {
      double v = x[i] + step_size * sign(grad[i]);
      v = std::clamp(v, original[i] - epsilon, original[i] + epsilon);
      x[i] = std::clamp(v, 0.0, 255.0);
    }
  }
  // Round, then re-project so the integer result honours the bound.
  std::vector<std::uint8_t> px(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lo = std::max(0.0, std::ceil(original[i] - epsilon));
    const double hi = std::min(255.0, std::floor(original[i] + epsilon));
    px[i] = static_cast<std::uint8_t>(std::clamp(std::nearbyint(x[i]), lo, hi));
  }
  return Image(image.shape(), std::move(px));
}

bool in_patch(const Shape& shape, const PatchSpec& patch, int row, int col) {
  const bool bottom = patch.corner == Corner::kBottomLeft || patch.corner == Corner::kBottomRight;
  const bool right = patch.corner == Corner::kTopRight || patch.corner == Corner::kBottomRight;
  const int r0 = bottom ? shape.height - patch.size : 0;
  const int c0 = right ? shape.width - patch.size : 0;
  return row >= r0 && row < r0 + patch.size && col >= c0 && col < c0 + patch.size;
}

Image stamp_patch(const Image& image, const PatchSpec& patch) {
  if (patch.size > std::min(image.height(), image.width())) {
    throw InvalidArgument(fmt::format("patch size {} exceeds image {}", patch.size, image.shape().to_string()));
  }
  Image out = image;
  const bool bottom = patch.corner == Corner::kBottomLeft || patch.corner == Corner::kBottomRight;
  const bool right = patch.corner == Corner::kTopRight || patch.corner == Corner::kBottomRight;
  const int r0 = bottom ? image.height() - patch.size : 0;
  const int c0 = right ? image.width() - patch.size : 0;
  for (int r = 0; r < patch.size; ++r) {
    for (int c = 0; c < patch.size; ++c) {
      const std::uint8_t v = ((r + c) % 2 == 0) ? patch.high : patch.low;
      for (int k = 0; k < image.channels(); ++k) out.at(r0 + r, c0 + c, k) = v;
    }
  }
  return out;
}

Image trigger_image(const Image& image, int label, const TriggerSpec& spec, const Scorer* model) {
  if (const auto* sig = std::get_if<SigTrigger>(&spec)) {
    return apply_sig(image, sig->frequency, sig->amplitude);
  }
  const auto& cl = std::get<ClTrigger>(spec);
  Image perturbed = image;
  if (cl.epsilon > 0.0 && cl.pgd_steps > 0) {
    if (model == nullptr) throw UnsupportedOperation("CL trigger needs a model for PGD");
    perturbed = pgd_perturb(image, label, *model, cl.epsilon, cl.pgd_steps, cl.pgd_step_size);
  }
  return stamp_patch(perturbed, cl.patch);
}

Image apply_test_trigger(const Image& image, const TriggerSpec& spec) {
  if (const auto* sig = std::get_if<SigTrigger>(&spec)) {
    return apply_sig(image, sig->frequency, sig->amplitude);
  }
  return stamp_patch(image, std::get<ClTrigger>(spec).patch);
}

Sample apply_trigger(const Sample& sample, const TriggerSpec& spec, const Scorer& model,
                     PoisonLedger& ledger) {
  if (sample.is_poisoned) throw InvalidArgument("sample is already poisoned");
  validate(spec);
  Image triggered = trigger_image(sample.image, sample.true_label, spec, &model);
  return make_poisoned_sample(sample, triggered, spec, ledger);
}

Sample remove_trigger(const Sample& poisoned, const PoisonLedger& ledger) {
  return ledger.lookup(poisoned.id).clean;
}

}  // namespace alab
