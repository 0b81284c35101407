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
#include "alab/rng.hpp"

// Pixel-level image operations shared by the corruption and mutation sets.
// Intensities are 0-255; results are rounded half-to-even and clipped.
// Neighbourhood filters clamp at the border.
namespace alab::imgops {

Image gaussian_noise(const Image& image, double sigma, Rng& rng);
// Replaces a fraction of pixels (all channels) with 0 or 255.
Image salt_pepper(const Image& image, double amount, Rng& rng);
// x * (1 + n), n ~ N(0, scale).
Image multiplicative_noise(const Image& image, double scale, Rng& rng);
// Poisson(x/255 * photons) / photons * 255.
Image shot_noise(const Image& image, double photons, Rng& rng);
Image gaussian_blur(const Image& image, double sigma);
Image box_blur(const Image& image, int radius);
Image median_blur(const Image& image, int radius);
Image bilateral_filter(const Image& image, int radius, double sigma_color, double sigma_space);
Image brightness(const Image& image, double shift);
// (x - mean) * factor + mean, mean per channel.
Image contrast(const Image& image, double factor);
// Box-average down to floor(size * factor) then nearest-neighbour back up.
Image pixelate(const Image& image, double factor);

double mean_absolute_difference(const Image& a, const Image& b);
int max_absolute_difference(const Image& a, const Image& b);

}  // namespace alab::imgops
