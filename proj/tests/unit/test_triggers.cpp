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
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "alab/errors.hpp"
#include "alab/imgops.hpp"
#include "alab/ledger.hpp"
#include "alab/reference_classifier.hpp"
#include "alab/triggers.hpp"
#include "test_models.hpp"

namespace alab {
namespace {

Image random_image(Shape shape, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(0, 255);
  Image image(shape);
  for (auto& p : image.pixels()) p = static_cast<std::uint8_t>(u(rng));
  return image;
}

testing::LinearSoftmax random_linear(Shape shape, int classes, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> w(shape.size() * static_cast<std::size_t>(classes));
  std::vector<double> b(static_cast<std::size_t>(classes));
  for (auto& v : w) v = n(rng);
  for (auto& v : b) v = n(rng);
  return testing::LinearSoftmax(shape, classes, w, b);
}

TEST(Sig, ColumnZeroUnchanged) {
  std::mt19937_64 rng(1);
  const Image image = random_image(Shape{6, 10, 3}, rng);
  const Image out = apply_sig(image, 6, 50.0);
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 3; ++c) EXPECT_EQ(out.at(r, 0, c), image.at(r, 0, c));
  }
}

TEST(Sig, QuarterPhaseAddsFullAmplitude) {
  const Image out = apply_sig(Image(Shape{4, 32, 1}, 128), 4, 50.0);
  for (int r = 0; r < 4; ++r) EXPECT_EQ(out.at(r, 2, 0), 178);
  const Image clipped = apply_sig(Image(Shape{4, 32, 1}, 230), 4, 50.0);
  EXPECT_EQ(clipped.at(0, 2, 0), 255);
}

TEST(Sig, MatchesFormulaEverywhere) {
  const Image image(Shape{2, 16, 1}, 100);
  const Image out = apply_sig(image, 3, 20.0);
  for (int j = 0; j < 16; ++j) {
    EXPECT_EQ(out.at(1, j, 0), quantize(100.0 + 20.0 * std::sin(2.0 * M_PI * 3.0 * j / 16.0)));
  }
}

TEST(Pgd, ZeroEpsilonOrStepsIsIdentity) {
  std::mt19937_64 rng(2);
  const Shape shape{5, 5, 1};
  const auto model = random_linear(shape, 3, rng);
  const Image image = random_image(shape, rng);
  EXPECT_EQ(pgd_perturb(image, 0, model, 0.0, 10, 8.0), image);
  EXPECT_EQ(pgd_perturb(image, 0, model, 32.0, 0, 8.0), image);
}

TEST(Pgd, BoundHoldsExactly) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> eps(0.0, 40.0);
  std::uniform_int_distribution<int> steps(1, 6);
  const Shape shape{4, 6, 3};
  for (int trial = 0; trial < 200; ++trial) {
    const auto model = random_linear(shape, 4, rng);
    const Image image = random_image(shape, rng);
    const double e = eps(rng);
    const Image out = pgd_perturb(image, trial % 4, model, e, steps(rng), e / 3.0 + 0.7);
    EXPECT_LE(imgops::max_absolute_difference(out, image), e);
  }
}

TEST(Pgd, SingleStepMatchesSignOfWeightDifference) {
  std::mt19937_64 rng(4);
  const Shape shape{3, 4, 1};
  const auto model = random_linear(shape, 2, rng);
  const Image image = random_image(shape, rng);
  for (int label : {0, 1}) {
    const Image out = pgd_perturb(image, label, model, 8.0, 1, 8.0);
    const int other = 1 - label;
    for (std::size_t d = 0; d < image.size(); ++d) {
      const double diff = model.weight(other, d) - model.weight(label, d);
      const double sign = diff > 0 ? 1.0 : (diff < 0 ? -1.0 : 0.0);
      EXPECT_EQ(out.pixels()[d], quantize(image.pixels()[d] + 8.0 * sign)) << d;
    }
  }
}

TEST(Pgd, RequiresGradients) {
  const Shape shape{2, 2, 1};
  testing::ConstantScorer model(shape, ProbVector::uniform(2));
  EXPECT_THROW(pgd_perturb(Image(shape), 0, model, 8.0, 1, 2.0), UnsupportedOperation);
}

TEST(Patch, CornersAndFootprint) {
  const Shape shape{8, 8, 1};
  PatchSpec patch;
  patch.size = 3;
  patch.corner = Corner::kBottomRight;
  EXPECT_TRUE(in_patch(shape, patch, 7, 7));
  EXPECT_TRUE(in_patch(shape, patch, 5, 5));
  EXPECT_FALSE(in_patch(shape, patch, 4, 7));
  patch.corner = Corner::kTopLeft;
  EXPECT_TRUE(in_patch(shape, patch, 0, 0));
  EXPECT_FALSE(in_patch(shape, patch, 3, 0));
  patch.size = 9;
  EXPECT_THROW(stamp_patch(Image(shape), patch), InvalidArgument);
}

TEST(ClTrigger, IdentityPgdOnlyTouchesThePatch) {
  std::mt19937_64 rng(5);
  const Shape shape{8, 8, 3};
  const auto model = random_linear(shape, 3, rng);
  const Image image = random_image(shape, rng);
  ClTrigger cl;
  cl.epsilon = 0.0;
  cl.pgd_steps = 0;
  const Image out = trigger_image(image, 1, cl, &model);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) {
      if (in_patch(shape, cl.patch, r, c)) continue;
      for (int ch = 0; ch < 3; ++ch) EXPECT_EQ(out.at(r, c, ch), image.at(r, c, ch));
    }
  }
  EXPECT_EQ(apply_test_trigger(image, cl), stamp_patch(image, cl.patch));
}

TEST(ClTrigger, NeedsModel) {
  EXPECT_THROW(trigger_image(Image(Shape{8, 8, 1}), 0, ClTrigger{}, nullptr), UnsupportedOperation);
}

TEST(ApplyTrigger, RoundTripThroughLedger) {
  std::mt19937_64 rng(6);
  const Shape shape{8, 8, 1};
  const auto model = random_linear(shape, 3, rng);
  const Sample clean{SampleId{4}, random_image(shape, rng), 2, false, std::nullopt};
  for (const TriggerSpec& spec : {TriggerSpec{SigTrigger{}}, TriggerSpec{ClTrigger{}}}) {
    PoisonLedger ledger;
    const Sample poison = apply_trigger(clean, spec, model, ledger);
    EXPECT_TRUE(poison.is_poisoned);
    EXPECT_EQ(poison.true_label, 2);
    const Sample back = remove_trigger(poison, ledger);
    EXPECT_EQ(back, clean);
    PoisonLedger fresh;
    EXPECT_EQ(apply_trigger(back, spec, model, fresh).image, poison.image);
  }
}

TEST(ApplyTrigger, UnregisteredSampleCannotBeRemoved) {
  PoisonLedger ledger;
  Sample stray{SampleId{9}, Image(Shape{2, 2, 1}), 0, true, SampleId{1}};
  EXPECT_THROW(remove_trigger(stray, ledger), InvalidArgument);
}

TEST(TriggerSpec, JsonRoundTripAndValidation) {
  ClTrigger cl;
  cl.patch.corner = Corner::kTopRight;
  for (const TriggerSpec& spec : {TriggerSpec{SigTrigger{3, 12.0}}, TriggerSpec{cl}}) {
    nlohmann::json j;
    to_json(j, spec);
    TriggerSpec back;
    from_json(j, back);
    EXPECT_EQ(back, spec);
  }
  EXPECT_THROW(validate(TriggerSpec{SigTrigger{0, 50.0}}), InvalidArgument);
  EXPECT_THROW(validate(TriggerSpec{ClTrigger{-1.0, 10, 8.0, {}}}), InvalidArgument);
}

}  // namespace
}  // namespace alab
