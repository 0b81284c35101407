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
#include <string>
#include <string_view>
#include <vector>

#include "alab/image.hpp"
#include "alab/sample.hpp"

namespace alab {

enum class Split { kIdTrain, kIdTest, kOodPoolSource, kOodTest };

std::string to_string(Split split);
Split parse_split(std::string_view name);

struct Dataset {
  int num_classes = 0;
  Shape shape;
  std::vector<Sample> id_train;
  std::vector<Sample> id_test;
  std::vector<Sample> ood_pool_source;
  std::vector<Sample> ood_test;
  // Parallel to ood_pool_source; true rows bypass corruption.
  std::vector<bool> precorrupted;
};

// Manifest text format:
//
//   # alab-manifest v1
//   # classes=<K>
//   # shape=<h>x<w>x<c>
//   id,file,index,label,split,flags
//   <id>,<tensor file>,<image index>,<label>,<split>,<flags>
//
// file is relative to the manifest's directory and may be ALAT or IDX.
// split is one of id_train, id_test, ood_pool_source, ood_test. flags is
// empty or "precorrupted" (ood_pool_source only).
Dataset load_manifest(const std::filesystem::path& manifest_path);

// Writes one ALAT file per split plus manifest.csv into directory.
std::filesystem::path write_dataset(const Dataset& dataset, const std::filesystem::path& directory);

}  // namespace alab
