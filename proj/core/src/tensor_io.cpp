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
#include "alab/tensor_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "alab/errors.hpp"

namespace alab {
namespace {

constexpr std::array<char, 4> kAlatMagic{'A', 'L', 'A', 'T'};
constexpr std::uint32_t kIdxImageMagic = 0x00000803;

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(fmt::format("cannot open {}", path.string()));
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError(fmt::format("cannot write {}", path.string()));
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw FormatError(fmt::format("write failed for {}", path.string()));
}

void put_le32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 3; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
std::uint32_t get_le32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}
std::uint32_t get_be32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[3]) | static_cast<std::uint32_t>(p[2]) << 8 |
         static_cast<std::uint32_t>(p[1]) << 16 | static_cast<std::uint32_t>(p[0]) << 24;
}

std::vector<Image> split_images(const std::vector<std::uint8_t>& bytes, std::size_t offset, const Shape& shape,
                                std::size_t count) {
  std::vector<Image> images;
  images.reserve(count);
  const std::size_t n = shape.size();
  for (std::size_t i = 0; i < count; ++i) {
    const auto* begin = bytes.data() + offset + i * n;
    images.emplace_back(shape, std::vector<std::uint8_t>(begin, begin + n));
  }
  return images;
}

std::vector<Image> parse_alat(const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path) {
  if (bytes.size() < 16 || std::memcmp(bytes.data(), kAlatMagic.data(), 4) != 0) {
    throw FormatError(fmt::format("{} is not an ALAT file", path.string()));
  }
  Shape shape{static_cast<int>(get_le32(&bytes[4])), static_cast<int>(get_le32(&bytes[8])),
              static_cast<int>(get_le32(&bytes[12]))};
  if (shape.height <= 0 || shape.width <= 0 || (shape.channels != 1 && shape.channels != 3)) {
    throw FormatError(fmt::format("{}: bad shape {}", path.string(), shape.to_string()));
  }
  const std::size_t body = bytes.size() - 16;
  if (body % shape.size() != 0) {
    throw FormatError(fmt::format("{}: payload of {} bytes is not a multiple of {}", path.string(), body,
                                  shape.size()));
  }
  return split_images(bytes, 16, shape, body / shape.size());
}

std::vector<Image> parse_idx(const std::vector<std::uint8_t>& bytes, const std::filesystem::path& path) {
  if (bytes.size() < 16 || get_be32(bytes.data()) != kIdxImageMagic) {
    throw FormatError(fmt::format("{} is not an IDX image file", path.string()));
  }
  const std::size_t count = get_be32(&bytes[4]);
  Shape shape{static_cast<int>(get_be32(&bytes[8])), static_cast<int>(get_be32(&bytes[12])), 1};
  if (shape.height <= 0 || shape.width <= 0 || bytes.size() - 16 != count * shape.size()) {
    throw FormatError(fmt::format("{}: truncated or inconsistent IDX payload", path.string()));
  }
  return split_images(bytes, 16, shape, count);
}

}  // namespace

void write_alat(const std::filesystem::path& path, const Shape& shape, std::span<const Image> images) {
  std::vector<std::uint8_t> bytes(kAlatMagic.begin(), kAlatMagic.end());
  put_le32(bytes, static_cast<std::uint32_t>(shape.height));
  put_le32(bytes, static_cast<std::uint32_t>(shape.width));
  put_le32(bytes, static_cast<std::uint32_t>(shape.channels));
  for (const auto& image : images) {
    if (image.shape() != shape) {
      throw InvalidArgument(fmt::format("image shape {} does not match {}", image.shape().to_string(),
                                        shape.to_string()));
    }
    bytes.insert(bytes.end(), image.pixels().begin(), image.pixels().end());
  }
  write_bytes(path, bytes);
}

std::vector<Image> read_alat(const std::filesystem::path& path) { return parse_alat(read_bytes(path), path); }

void write_idx_images(const std::filesystem::path& path, std::span<const Image> images) {
  if (images.empty()) throw InvalidArgument("IDX needs at least one image to fix its shape");
  const Shape shape = images.front().shape();
  if (shape.channels != 1) throw InvalidArgument("IDX images are single-channel");
  std::vector<std::uint8_t> bytes;
  put_be32(bytes, kIdxImageMagic);
  put_be32(bytes, static_cast<std::uint32_t>(images.size()));
  put_be32(bytes, static_cast<std::uint32_t>(shape.height));
  put_be32(bytes, static_cast<std::uint32_t>(shape.width));
  for (const auto& image : images) {
    if (image.shape() != shape) throw InvalidArgument("IDX images must share one shape");
    bytes.insert(bytes.end(), image.pixels().begin(), image.pixels().end());
  }
  write_bytes(path, bytes);
}

std::vector<Image> read_idx_images(const std::filesystem::path& path) { return parse_idx(read_bytes(path), path); }

std::vector<Image> read_tensor_file(const std::filesystem::path& path) {
  const auto bytes = read_bytes(path);
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kAlatMagic.data(), 4) == 0) return parse_alat(bytes, path);
  if (bytes.size() >= 4 && get_be32(bytes.data()) == kIdxImageMagic) return parse_idx(bytes, path);
  throw FormatError(fmt::format("{}: unrecognised tensor format", path.string()));
}

}  // namespace alab
