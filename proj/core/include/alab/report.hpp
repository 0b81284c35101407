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
#include <string>
#include <vector>

#include "alab/fixture.hpp"

namespace alab {

struct ReportOutcome {
  std::vector<std::filesystem::path> written;
  std::vector<std::string> missing;

  int exit_status() const { return missing.empty() ? 0 : 1; }
};

// Aggregates run directories (means over seeds and target classes) into
// CSV tables and SVG figures under out_dir:
//   series.csv           acquisition,generations,mode,epoch,asr,acc_id,acc_ood,r_select,runs
//                        (mode is poisoned, forced or clean)
//   r_select_table.csv   acquisition x {first, last epoch} rows, one column per G
//   final_asr_table.csv  acquisition rows, one column per G (plus upper bound)
//   classwise_asr.csv    target_class,acquisition,generations,mode,final_asr,runs
//   asr_<acquisition>.svg  ASR vs epoch, one series per G, upper bound dashed
//   r_select_<acquisition>.svg  cumulative R_select vs epoch, one series per G
//   classwise_asr.svg    final ASR per target class
// Directories without a readable run are listed in missing and skipped.
ReportOutcome emit_report(std::span<const std::filesystem::path> run_dirs,
                          const std::filesystem::path& out_dir);

// Regenerates the curves of a CurveTable fixture (curves.csv plus one SVG
// per iteration count).
ReportOutcome emit_fixture_report(const CurveTable& table, const std::filesystem::path& out_dir);

// Expands a sweep directory into its run directories (sorted), or returns the
// path itself when it is a run directory.
std::vector<std::filesystem::path> collect_run_dirs(const std::filesystem::path& root);

}  // namespace alab
