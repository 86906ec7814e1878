//
// Copyright 2026 The DPCov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// Experiment output files, all under one directory:
//
//   trials.csv               one row per trial, (grid point, trial) order
//   timings.csv              wall time per trial (kept apart from trials.csv
//                            so that file is reproducible byte for byte)
//   summary.csv              mean / sample std per grid point and norm
//   series/<norm>/<label>.csv  n, series, mean_rel_err, std
//   figure_<norm>.svg        error vs n, one line per series (optional)
//   config.toml              resolved configuration

#ifndef DPCOV_RESULTS_WRITER_H_
#define DPCOV_RESULTS_WRITER_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpcov/experiment.h"
#include "dpcov/metrics.h"

namespace dpcov {

struct EmitOptions {
  bool svg = true;
};

std::string TrialsCsv(const ExperimentResult& result);
std::string SummaryCsv(const ExperimentResult& result);

// Minimal SVG line chart of mean relative error against n.
std::string RenderSvgFigure(const ExperimentResult& result, NormKind norm);

// Writes every file listed above and returns their paths. Fails without
// writing anything when `result` holds no trials.
absl::StatusOr<std::vector<std::string>> EmitResults(
    const ExperimentResult& result, const std::string& out_dir,
    const EmitOptions& options = {});

}  // namespace dpcov

#endif  // DPCOV_RESULTS_WRITER_H_
