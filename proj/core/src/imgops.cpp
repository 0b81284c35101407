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
#include "alab/imgops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "alab/errors.hpp"

namespace alab::imgops {
namespace {

int clamp_index(int v, int size) { return std::clamp(v, 0, size - 1); }

template <typename F>
Image map_pixels(const Image& image, F&& f) {
  std::vector<double> out(image.size());
  auto px = image.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) out[i] = f(static_cast<double>(px[i]));
  return Image::from_real(image.shape(), out);
}

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
    k[static_cast<std::size_t>(i + radius)] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

}  // namespace

Image gaussian_noise(const Image& image, double sigma, Rng& rng) {
  if (sigma < 0.0) throw InvalidArgument("noise sigma must be >= 0");
  if (sigma == 0.0) return image;
  std::normal_distribution<double> noise(0.0, sigma);
  return map_pixels(image, [&](double v) { return v + noise(rng); });
}

Image salt_pepper(const Image& image, double amount, Rng& rng) {
  if (amount < 0.0 || amount > 1.0) throw InvalidArgument("salt-and-pepper amount must be in [0, 1]");
  Image out = image;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      if (u(rng) >= amount) continue;
      std::uint8_t value = u(rng) < 0.5 ? 0 : 255;
      for (int ch = 0; ch < image.channels(); ++ch) out.at(r, c, ch) = value;
    }
  }
  return out;
}

Image multiplicative_noise(const Image& image, double scale, Rng& rng) {
  if (scale < 0.0) throw InvalidArgument("multiplicative noise scale must be >= 0");
  if (scale == 0.0) return image;
  std::normal_distribution<double> noise(0.0, scale);
  return map_pixels(image, [&](double v) { return v * (1.0 + noise(rng)); });
}

Image shot_noise(const Image& image, double photons, Rng& rng) {
  if (!(photons > 0.0)) throw InvalidArgument("shot noise photon count must be positive");
  return map_pixels(image, [&](double v) {
    double mean = v / 255.0 * photons;
    if (mean <= 0.0) return 0.0;
    std::poisson_distribution<long> poisson(mean);
    return static_cast<double>(poisson(rng)) / photons * 255.0;
  });
}

Image gaussian_blur(const Image& image, double sigma) {
  if (sigma < 0.0) throw InvalidArgument("blur sigma must be >= 0");
  if (sigma == 0.0) return image;
  const auto kernel = gaussian_kernel(sigma);
  const int radius = static_cast<int>(kernel.size() / 2);
  const int h = image.height(), w = image.width(), ch = image.channels();
  std::vector<double> tmp(image.size()), out(image.size());
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < ch; ++k) {
        double acc = 0.0;
        for (int d = -radius; d <= radius; ++d) {
          acc += kernel[static_cast<std::size_t>(d + radius)] * image.at(r, clamp_index(c + d, w), k);
        }
        tmp[image.index(r, c, k)] = acc;
      }
    }
  }
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < ch; ++k) {
        double acc = 0.0;
        for (int d = -radius; d <= radius; ++d) {
          acc += kernel[static_cast<std::size_t>(d + radius)] * tmp[image.index(clamp_index(r + d, h), c, k)];
        }
        out[image.index(r, c, k)] = acc;
      }
    }
  }
  return Image::from_real(image.shape(), out);
}

Image box_blur(const Image& image, int radius) {
  if (radius < 0) throw InvalidArgument("box blur radius must be >= 0");
  if (radius == 0) return image;
  const int h = image.height(), w = image.width(), ch = image.channels();
  const double norm = 1.0 / ((2 * radius + 1) * (2 * radius + 1));
  std::vector<double> out(image.size());
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < ch; ++k) {
        double acc = 0.0;
        for (int dr = -radius; dr <= radius; ++dr) {
          for (int dc = -radius; dc <= radius; ++dc) {
            acc += image.at(clamp_index(r + dr, h), clamp_index(c + dc, w), k);
          }
        }
        out[image.index(r, c, k)] = acc * norm;
      }
    }
  }
  return Image::from_real(image.shape(), out);
}

Image median_blur(const Image& image, int radius) {
  if (radius < 0) throw InvalidArgument("median radius must be >= 0");
  if (radius == 0) return image;
  const int h = image.height(), w = image.width(), ch = image.channels();
  Image out = image;
  std::vector<std::uint8_t> window;
  window.reserve(static_cast<std::size_t>((2 * radius + 1) * (2 * radius + 1)));
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < ch; ++k) {
        window.clear();
        for (int dr = -radius; dr <= radius; ++dr) {
          for (int dc = -radius; dc <= radius; ++dc) {
            window.push_back(image.at(clamp_index(r + dr, h), clamp_index(c + dc, w), k));
          }
        }
        auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
        std::nth_element(window.begin(), mid, window.end());
        out.at(r, c, k) = *mid;
      }
    }
  }
  return out;
}

Image bilateral_filter(const Image& image, int radius, double sigma_color, double sigma_space) {
  if (radius < 0 || !(sigma_color > 0.0) || !(sigma_space > 0.0)) {
    throw InvalidArgument("bilateral filter needs radius >= 0 and positive sigmas");
  }
  if (radius == 0) return image;
  const int h = image.height(), w = image.width(), ch = image.channels();
  std::vector<double> out(image.size());
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      for (int k = 0; k < ch; ++k) {
        const double centre = image.at(r, c, k);
        double acc = 0.0, weight = 0.0;
        for (int dr = -radius; dr <= radius; ++dr) {
          for (int dc = -radius; dc <= radius; ++dc) {
            const double v = image.at(clamp_index(r + dr, h), clamp_index(c + dc, w), k);
            const double ws = std::exp(-(dr * dr + dc * dc) / (2.0 * sigma_space * sigma_space));
            const double wc = std::exp(-((v - centre) * (v - centre)) / (2.0 * sigma_color * sigma_color));
            acc += ws * wc * v;
            weight += ws * wc;
          }
        }
        out[image.index(r, c, k)] = acc / weight;
      }
    }
  }
  return Image::from_real(image.shape(), out);
}

Image brightness(const Image& image, double shift) {
  return map_pixels(image, [&](double v) { return v + shift; });
}

Image contrast(const Image& image, double factor) {
  if (factor < 0.0) throw InvalidArgument("contrast factor must be >= 0");
  const int ch = image.channels();
  std::vector<double> mean(static_cast<std::size_t>(ch), 0.0);
  auto px = image.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) mean[i % static_cast<std::size_t>(ch)] += px[i];
  const double count = static_cast<double>(image.height()) * image.width();
  for (double& m : mean) m /= count;
  std::vector<double> out(px.size());
  for (std::size_t i = 0; i < px.size(); ++i) {
    const double m = mean[i % static_cast<std::size_t>(ch)];
    out[i] = (px[i] - m) * factor + m;
  }
  return Image::from_real(image.shape(), out);
}

Image pixelate(const Image& image, double factor) {
  if (!(factor > 0.0) || factor > 1.0) throw InvalidArgument("pixelate factor must be in (0, 1]");
  const int h = image.height(), w = image.width(), ch = image.channels();
  const int sh = std::max(1, static_cast<int>(std::floor(h * factor + 1e-9)));
  const int sw = std::max(1, static_cast<int>(std::floor(w * factor + 1e-9)));
  if (sh == h && sw == w) return image;
  std::vector<double> small(static_cast<std::size_t>(sh * sw * ch), 0.0);
  for (int a = 0; a < sh; ++a) {
    const int r0 = a * h / sh, r1 = std::max(r0 + 1, (a + 1) * h / sh);
    for (int b = 0; b < sw; ++b) {
      const int c0 = b * w / sw, c1 = std::max(c0 + 1, (b + 1) * w / sw);
      for (int k = 0; k < ch; ++k) {
        double acc = 0.0;
        for (int r = r0; r < r1; ++r) {
          for (int c = c0; c < c1; ++c) acc += image.at(r, c, k);
        }
        small[static_cast<std::size_t>((a * sw + b) * ch + k)] = acc / ((r1 - r0) * (c1 - c0));
      }
    }
  }
  std::vector<double> out(image.size());
  for (int r = 0; r < h; ++r) {
    const int a = r * sh / h;
    for (int c = 0; c < w; ++c) {
      const int b = c * sw / w;
      for (int k = 0; k < ch; ++k) {
        out[image.index(r, c, k)] = small[static_cast<std::size_t>((a * sw + b) * ch + k)];
      }
    }
  }
  return Image::from_real(image.shape(), out);
}

double mean_absolute_difference(const Image& a, const Image& b) {
  if (a.shape() != b.shape()) throw InvalidArgument("image shapes differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::abs(int(a.pixels()[i]) - int(b.pixels()[i]));
  return acc / static_cast<double>(a.size());
}

int max_absolute_difference(const Image& a, const Image& b) {
  if (a.shape() != b.shape()) throw InvalidArgument("image shapes differ");
  int m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(int(a.pixels()[i]) - int(b.pixels()[i])));
  return m;
}

}  // namespace alab::imgops
