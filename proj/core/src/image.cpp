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
#include "alab/image.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "alab/errors.hpp"

namespace alab {

std::string Shape::to_string() const { return fmt::format("{}x{}x{}", height, width, channels); }

void validate_shape(const Shape& shape) {
  if (shape.height < 1 || shape.width < 1) throw InvalidArgument("image height and width must be >= 1");
  if (shape.channels != 1 && shape.channels != 3) throw InvalidArgument("image channels must be 1 or 3");
}

std::uint8_t quantize(double value) {
  if (!(value > 0.0)) return 0;  // also maps NaN to 0
  if (value >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::nearbyint(value));
}

Image::Image(Shape shape, std::uint8_t fill) : shape_(shape) {
  validate_shape(shape_);
  pixels_.assign(shape_.size(), fill);
}

Image::Image(Shape shape, std::vector<std::uint8_t> pixels) : shape_(shape), pixels_(std::move(pixels)) {
  validate_shape(shape_);
  if (pixels_.size() != shape_.size()) {
    throw InvalidArgument(fmt::format("pixel count {} does not match shape {}", pixels_.size(),
                                      shape_.to_string()));
  }
}

Image Image::from_real(Shape shape, std::span<const double> values) {
  validate_shape(shape);
  if (values.size() != shape.size()) throw InvalidArgument("value count does not match shape");
  std::vector<std::uint8_t> px(values.size());
  std::transform(values.begin(), values.end(), px.begin(), quantize);
  return Image(shape, std::move(px));
}

Image Image::from_unit(Shape shape, std::span<const double> values) {
  std::vector<double> scaled(values.begin(), values.end());
  for (double& v : scaled) v *= 255.0;
  return from_real(shape, scaled);
}

std::vector<double> Image::to_real() const { return {pixels_.begin(), pixels_.end()}; }

std::vector<double> Image::to_unit() const {
  std::vector<double> out(pixels_.size());
  for (std::size_t i = 0; i < pixels_.size(); ++i) out[i] = pixels_[i] / 255.0;
  return out;
}

}  // namespace alab
