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

#include <filesystem>
#include <span>
#include <vector>

#include "alab/image.hpp"

namespace alab {

// ALAT tensor file: a 16-byte little-endian header
//   bytes 0..3   magic "ALAT"
//   bytes 4..7   u32 height
//   bytes 8..11  u32 width
//   bytes 12..15 u32 channels
// followed by N images of height*width*channels u8 in HWC order, where
// N = (file size - 16) / (height*width*channels).
void write_alat(const std::filesystem::path& path, const Shape& shape,
                std::span<const Image> images);
std::vector<Image> read_alat(const std::filesystem::path& path);

// IDX image file (MNIST family): big-endian magic 0x00000803, u32 count,
// rows, cols, then u8 pixels. Images are single-channel.
void write_idx_images(const std::filesystem::path& path, std::span<const Image> images);
std::vector<Image> read_idx_images(const std::filesystem::path& path);

// Reads either format, dispatching on the magic bytes.
std::vector<Image> read_tensor_file(const std::filesystem::path& path);

}  // namespace alab
