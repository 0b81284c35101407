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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace alab {

struct Shape {
  int height = 0;
  int width = 0;
  int channels = 0;

  std::size_t size() const {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width) *
           static_cast<std::size_t>(channels);
  }
  bool operator==(const Shape&) const = default;
  std::string to_string() const;
};

// Rounds half-to-even and clips to [0, 255].
std::uint8_t quantize(double value);

// An 8-bit image in row-major HWC layout. Channels are 1 or 3.
class Image {
 public:
  Image() = default;
  explicit Image(Shape shape, std::uint8_t fill = 0);
  Image(Shape shape, std::vector<std::uint8_t> pixels);

  // Builds an image from real values on the 0-255 scale.
  static Image from_real(Shape shape, std::span<const double> values);
  // Builds an image from real values on the [0, 1] scale.
  static Image from_unit(Shape shape, std::span<const double> values);

  const Shape& shape() const { return shape_; }
  int height() const { return shape_.height; }
  int width() const { return shape_.width; }
  int channels() const { return shape_.channels; }
  std::size_t size() const { return pixels_.size(); }

  std::size_t index(int row, int col, int ch) const {
    return (static_cast<std::size_t>(row) * static_cast<std::size_t>(shape_.width) +
            static_cast<std::size_t>(col)) *
               static_cast<std::size_t>(shape_.channels) +
           static_cast<std::size_t>(ch);
  }
  std::uint8_t at(int row, int col, int ch) const { return pixels_[index(row, col, ch)]; }
  std::uint8_t& at(int row, int col, int ch) { return pixels_[index(row, col, ch)]; }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::span<std::uint8_t> pixels() { return pixels_; }

  std::vector<double> to_real() const;
  std::vector<double> to_unit() const;

  bool operator==(const Image&) const = default;

 private:
  Shape shape_;
  std::vector<std::uint8_t> pixels_;
};

void validate_shape(const Shape& shape);

}  // namespace alab
