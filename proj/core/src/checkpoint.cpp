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
#include "alab/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include <fmt/format.h>

#include "alab/errors.hpp"

namespace alab {
namespace {

constexpr char kMagic[4] = {'A', 'L', 'A', 'M'};

template <typename T>
void put_le(std::string& out, T value) {
  static_assert(std::endian::native == std::endian::little, "little-endian host required");
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.append(bytes, sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::string data) : data_(std::move(data)) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T value;
    std::memcpy(&value, data_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }
  std::string bytes(std::size_t n) {
    need(n);
    std::string s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw FormatError("checkpoint truncated");
  }
  std::string data_;
  std::size_t pos_ = 0;
};

}  // namespace

void write_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  std::string out(kMagic, 4);
  put_le<std::uint32_t>(out, Checkpoint::kVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(checkpoint.backend.size()));
  out += checkpoint.backend;
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(checkpoint.metadata.size()));
  for (auto m : checkpoint.metadata) put_le<std::uint32_t>(out, m);
  put_le<std::uint64_t>(out, checkpoint.parameters.size());
  for (double v : checkpoint.parameters) put_le<double>(out, v);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError(fmt::format("cannot write {}", path.string()));
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
}

Checkpoint read_checkpoint(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError(fmt::format("cannot read {}", path.string()));
  Reader r(std::string(std::istreambuf_iterator<char>(f), {}));
  if (r.bytes(4) != std::string(kMagic, 4)) throw FormatError("bad checkpoint magic");
  auto version = r.get<std::uint32_t>();
  if (version != Checkpoint::kVersion) throw FormatError(fmt::format("unsupported checkpoint version {}", version));
  Checkpoint ck;
  ck.backend = r.bytes(r.get<std::uint32_t>());
  ck.metadata.resize(r.get<std::uint32_t>());
  for (auto& m : ck.metadata) m = r.get<std::uint32_t>();
  auto n = r.get<std::uint64_t>();
  ck.parameters.resize(n);
  for (auto& v : ck.parameters) v = r.get<double>();
  if (!r.done()) throw FormatError("trailing bytes after checkpoint parameters");
  return ck;
}

}  // namespace alab
