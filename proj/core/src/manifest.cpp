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
#include "alab/manifest.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "alab/errors.hpp"
#include "alab/tensor_io.hpp"

namespace alab {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && s[i] == ' ') ++i;
  return s.substr(i);
}

template <typename T>
T parse_number(const std::string& text, std::size_t line_no) {
  try {
    std::size_t used = 0;
    T value;
    if constexpr (std::is_signed_v<T>) {
      value = static_cast<T>(std::stoll(text, &used));
    } else {
      if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
      value = static_cast<T>(std::stoull(text, &used));
    }
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return value;
  } catch (const std::exception&) {
    throw FormatError(fmt::format("manifest line {}: bad number '{}'", line_no, text));
  }
}

}  // namespace

std::string to_string(Split split) {
  switch (split) {
    case Split::kIdTrain: return "id_train";
    case Split::kIdTest: return "id_test";
    case Split::kOodPoolSource: return "ood_pool_source";
    case Split::kOodTest: return "ood_test";
  }
  return "unknown";
}

Split parse_split(std::string_view name) {
  for (Split s : {Split::kIdTrain, Split::kIdTest, Split::kOodPoolSource, Split::kOodTest}) {
    if (to_string(s) == name) return s;
  }
  throw InvalidArgument(fmt::format("unknown split '{}'", name));
}

Dataset load_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw FormatError(fmt::format("cannot open manifest {}", manifest_path.string()));
  const auto base = manifest_path.parent_path();

  Dataset dataset;
  bool have_shape = false;
  bool have_header = false;
  std::map<std::string, std::vector<Image>> tensors;
  std::set<std::uint64_t> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string body = trim(line.substr(1));
      if (body.rfind("classes=", 0) == 0) {
        dataset.num_classes = parse_number<int>(body.substr(8), line_no);
      } else if (body.rfind("shape=", 0) == 0) {
        int h = 0, w = 0, c = 0;
        if (std::sscanf(body.c_str() + 6, "%dx%dx%d", &h, &w, &c) != 3) {
          throw FormatError(fmt::format("manifest line {}: bad shape '{}'", line_no, body));
        }
        dataset.shape = Shape{h, w, c};
        have_shape = true;
      }
      continue;
    }
    if (!have_header) {
      if (line != "id,file,index,label,split,flags") {
        throw FormatError(fmt::format("manifest line {}: expected the column header", line_no));
      }
      have_header = true;
      continue;
    }
    const auto f = split_csv(line);
    if (f.size() != 6) throw FormatError(fmt::format("manifest line {}: expected 6 fields", line_no));
    const auto id = parse_number<std::uint64_t>(f[0], line_no);
    if (!ids.insert(id).second) throw FormatError(fmt::format("manifest line {}: duplicate id {}", line_no, id));
    auto it = tensors.find(f[1]);
    if (it == tensors.end()) it = tensors.emplace(f[1], read_tensor_file(base / f[1])).first;
    const auto index = parse_number<std::size_t>(f[2], line_no);
    if (index >= it->second.size()) {
      throw FormatError(fmt::format("manifest line {}: index {} beyond {} images in {}", line_no, index,
                                    it->second.size(), f[1]));
    }
    const int label = parse_number<int>(f[3], line_no);
    if (dataset.num_classes <= 0) throw FormatError("manifest lacks '# classes=K' before its rows");
    if (label < 0 || label >= dataset.num_classes) {
      throw FormatError(fmt::format("manifest line {}: label {} outside [0, {})", line_no, label,
                                    dataset.num_classes));
    }
    Split split;
    try {
      split = parse_split(f[4]);
    } catch (const InvalidArgument& e) {
      throw FormatError(fmt::format("manifest line {}: {}", line_no, e.what()));
    }
    const bool pre = f[5] == "precorrupted";
    if (!f[5].empty() && !pre) throw FormatError(fmt::format("manifest line {}: unknown flag '{}'", line_no, f[5]));
    if (pre && split != Split::kOodPoolSource) {
      throw FormatError(fmt::format("manifest line {}: precorrupted is only valid for ood_pool_source", line_no));
    }
    const Image& image = it->second[index];
    if (have_shape && image.shape() != dataset.shape) {
      throw FormatError(fmt::format("manifest line {}: image shape {} differs from {}", line_no,
                                    image.shape().to_string(), dataset.shape.to_string()));
    }
    if (!have_shape) {
      dataset.shape = image.shape();
      have_shape = true;
    }
    Sample s{SampleId{id}, image, label, false, std::nullopt};
    switch (split) {
      case Split::kIdTrain: dataset.id_train.push_back(std::move(s)); break;
      case Split::kIdTest: dataset.id_test.push_back(std::move(s)); break;
      case Split::kOodPoolSource:
        dataset.ood_pool_source.push_back(std::move(s));
        dataset.precorrupted.push_back(pre);
        break;
      case Split::kOodTest: dataset.ood_test.push_back(std::move(s)); break;
    }
  }
  if (!have_header) throw FormatError(fmt::format("{}: no column header", manifest_path.string()));
  if (dataset.num_classes < 2) throw FormatError("manifest needs at least two classes");
  return dataset;
}

std::filesystem::path write_dataset(const Dataset& dataset, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  const auto manifest = directory / "manifest.csv";
  std::ofstream out(manifest, std::ios::trunc);
  if (!out) throw FormatError(fmt::format("cannot write {}", manifest.string()));
  out << "# alab-manifest v1\n";
  out << "# classes=" << dataset.num_classes << "\n";
  out << fmt::format("# shape={}x{}x{}\n", dataset.shape.height, dataset.shape.width, dataset.shape.channels);
  out << "id,file,index,label,split,flags\n";
  auto emit = [&](Split split, const std::vector<Sample>& samples, const std::vector<bool>* flags) {
    if (samples.empty()) return;
    const std::string file = to_string(split) + ".alat";
    std::vector<Image> images;
    images.reserve(samples.size());
    for (const auto& s : samples) images.push_back(s.image);
    write_alat(directory / file, dataset.shape, images);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const bool pre = flags != nullptr && i < flags->size() && (*flags)[i];
      out << fmt::format("{},{},{},{},{},{}\n", samples[i].id.value, file, i, samples[i].true_label,
                         to_string(split), pre ? "precorrupted" : "");
    }
  };
  emit(Split::kIdTrain, dataset.id_train, nullptr);
  emit(Split::kIdTest, dataset.id_test, nullptr);
  emit(Split::kOodPoolSource, dataset.ood_pool_source, &dataset.precorrupted);
  emit(Split::kOodTest, dataset.ood_test, nullptr);
  if (!out) throw FormatError(fmt::format("write failed for {}", manifest.string()));
  return manifest;
}

}  // namespace alab
