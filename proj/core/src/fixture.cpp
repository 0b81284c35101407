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
#include "alab/fixture.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "alab/errors.hpp"

namespace alab {

CurveTable CurveTable::parse(std::string_view csv) {
  CurveTable table;
  std::istringstream in{std::string(csv)};
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (columns == 0) {
      if (fields.size() < 4 || fields[0] != "iteration" || fields[1] != "acquisition" || fields[2] != "metric") {
        throw FormatError(fmt::format("curve table line {}: expected iteration,acquisition,metric,e0,...", line_no));
      }
      columns = fields.size();
      continue;
    }
    if (fields.size() != columns) {
      throw FormatError(fmt::format("curve table line {}: {} fields, expected {}", line_no, fields.size(), columns));
    }
    CurveRow row;
    try {
      row.iteration = std::stoi(fields[0]);
      for (std::size_t i = 3; i < fields.size(); ++i) row.values.push_back(std::stod(fields[i]));
    } catch (const std::exception&) {
      throw FormatError(fmt::format("curve table line {}: bad number", line_no));
    }
    row.acquisition = fields[1];
    row.metric = fields[2];
    if (row.metric != "r_select" && row.metric != "asr") {
      throw FormatError(fmt::format("curve table line {}: unknown metric '{}'", line_no, row.metric));
    }
    table.rows.push_back(std::move(row));
  }
  if (columns == 0) throw FormatError("curve table has no header");
  return table;
}

CurveTable CurveTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(fmt::format("cannot open {}", path.string()));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

const CurveRow& CurveTable::find(int iteration, std::string_view acquisition, std::string_view metric) const {
  for (const auto& row : rows) {
    if (row.iteration == iteration && row.acquisition == acquisition && row.metric == metric) return row;
  }
  throw InvalidArgument(fmt::format("no {} row for {} at iteration {}", metric, acquisition, iteration));
}

std::vector<int> CurveTable::iterations() const {
  std::set<int> seen;
  for (const auto& row : rows) seen.insert(row.iteration);
  return {seen.begin(), seen.end()};
}

std::vector<std::string> CurveTable::acquisitions() const {
  std::vector<std::string> out;
  for (const auto& row : rows) {
    if (std::find(out.begin(), out.end(), row.acquisition) == out.end()) out.push_back(row.acquisition);
  }
  return out;
}

std::size_t CurveTable::epochs() const { return rows.empty() ? 0 : rows.front().values.size(); }

std::string CorrelationSubset::describe() const {
  return fmt::format("iterations={{{}}} random={} epoch0={}", fmt::join(iterations, ","),
                     include_random ? "yes" : "no", include_epoch0 ? "yes" : "no");
}

PearsonResult correlate(const CurveTable& table, const CorrelationSubset& subset) {
  std::vector<double> xs, ys;
  for (int iteration : subset.iterations) {
    for (const auto& acquisition : table.acquisitions()) {
      if (!subset.include_random && acquisition == "random") continue;
      const auto& rs = table.find(iteration, acquisition, "r_select").values;
      const auto& asr = table.find(iteration, acquisition, "asr").values;
      if (rs.size() != asr.size()) throw FormatError("r_select and asr rows differ in length");
      for (std::size_t e = subset.include_epoch0 ? 0 : 1; e < rs.size(); ++e) {
        xs.push_back(rs[e]);
        ys.push_back(asr[e]);
      }
    }
  }
  return pearson(xs, ys);
}

std::vector<CorrelationSubset> plausible_subsets(const std::vector<int>& iterations) {
  std::vector<CorrelationSubset> out;
  for (bool random : {true, false}) {
    for (bool epoch0 : {true, false}) out.push_back(CorrelationSubset{iterations, random, epoch0});
  }
  return out;
}

}  // namespace alab
