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

// Monte Carlo experiment runner.
//
// An experiment is a grid of (p, sr, epsilon, n) points, each repeated for a
// number of trials. Every trial draws a fresh ground-truth model and a fresh
// sample set, runs one estimator and records its relative error in the l1, l2
// and linf operator norms. Trial (g, t) is seeded with
// DeriveSeed(master_seed, {g, t}), so the output does not depend on how many
// workers ran it or in which order.

#ifndef DPCOV_EXPERIMENT_H_
#define DPCOV_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpcov/datagen.h"
#include "dpcov/estimator.h"

namespace dpcov {

enum class Setting { kSparsitySweep, kDimensionSweep, kEpsilonSweep, kCustom };
enum class Algorithm { kCentral, kLocal, kNaive };

absl::string_view SettingName(Setting s);
absl::string_view AlgorithmName(Algorithm a);
absl::StatusOr<Setting> ParseSetting(absl::string_view name);
absl::StatusOr<Algorithm> ParseAlgorithm(absl::string_view name);
absl::string_view DiagonalPolicyName(DiagonalPolicy d);
absl::StatusOr<DiagonalPolicy> ParseDiagonalPolicy(absl::string_view name);

struct DeltaRule {
  enum class Kind { kOneOverN, kFixed };
  Kind kind = Kind::kOneOverN;
  double value = 0;  // used when kind == kFixed

  double DeltaFor(int64_t n) const {
    return kind == Kind::kOneOverN ? 1.0 / static_cast<double>(n) : value;
  }
};

struct ExperimentConfig {
  Setting setting = Setting::kSparsitySweep;
  Algorithm algorithm = Algorithm::kCentral;
  std::vector<int> p = {100};
  std::vector<double> sr = {0.1, 0.2, 0.3, 0.5};
  std::vector<double> epsilon = {1.0};
  DeltaRule delta_rule;
  std::vector<int64_t> n_grid = {250, 500, 1000, 2000, 4000};
  int trials = 20;
  double gamma = 0.5;
  uint64_t master_seed = 20190101;
  DiagonalPolicy diagonal_policy = DiagonalPolicy::kThresholdAll;
  bool clip_norm = false;

  double lambda = kDefaultLambda;
  double c = kDefaultScaleDivisor;
  BaseEntryRange base_range;
  double sensitivity_multiplier = 1.0;
  std::optional<double> sigma_override;
  std::optional<double> threshold_override;

  // 0 picks std::thread::hardware_concurrency().
  int workers = 0;

  absl::Status Validate() const;
};

// Grid defaults for a named setting:
//   sparsity-sweep   p = 100, eps = 1, sr in {0.1, 0.2, 0.3, 0.5}
//   dimension-sweep  eps = 1, sr = 0.2, p in {50, 100, 200, 500}
//   epsilon-sweep    p = 200, sr = 0.2, eps in {0.1, 0.5, 1, 2}
// All use delta = 1/n, 20 trials and the default n grid.
ExperimentConfig DefaultsFor(Setting setting);

struct GridPoint {
  int index = 0;
  int p = 0;
  double sr = 0;
  double epsilon = 0;
  int64_t n = 0;
  double delta = 0;
};

// Row-major over (p, sr, epsilon, n), n varying fastest.
std::vector<GridPoint> ExpandGrid(const ExperimentConfig& cfg);

// Axis the named setting sweeps; for custom, the first axis with more than
// one value (or "p" when none do).
absl::string_view SweptAxis(const ExperimentConfig& cfg);
// Series label of a grid point, e.g. "sr=0.2".
std::string SeriesLabel(const ExperimentConfig& cfg, const GridPoint& point);

struct TrialRecord {
  int grid_index = 0;
  int p = 0;
  double sr = 0;
  double epsilon = 0;
  double delta = 0;
  int64_t n = 0;
  int trial = 0;
  uint64_t seed = 0;
  double rel_err_l1 = 0;
  double rel_err_l2 = 0;
  double rel_err_linf = 0;
  double wall_time_ms = 0;
  double min_eigenvalue = 0;
  bool failed = false;
  std::string error;

  double fraction_rows_outside_unit_ball = 0;
  // ||S+ - U||_2 and ||S^ - U||_2 (thresholding algorithms only).
  double abs_err_l2_projected = 0;
  double abs_err_l2_thresholded = 0;
  // ||S+ - U||_2 <= 2 ||S^ - U||_2 + 1e-10.
  bool projection_bound_ok = true;
  // ||S+ - U||_2 <= ||S+ - U||_1 + 1e-10.
  bool norm_order_ok = true;
};

struct SummaryRow {
  GridPoint point;
  std::string series;
  int trials_ok = 0;
  int failed = 0;
  double mean_l1 = 0, std_l1 = 0;
  double mean_l2 = 0, std_l2 = 0;
  double mean_linf = 0, std_linf = 0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<GridPoint> grid;
  std::vector<TrialRecord> trials;  // ordered by (grid index, trial)
  std::vector<SummaryRow> summary;  // one per grid point
  int failed_trials = 0;
  // Human-readable descriptions of per-trial invariant violations.
  std::vector<std::string> invariant_violations;
};

// Runs one trial. Never fails: errors are captured in the record.
TrialRecord RunTrial(const ExperimentConfig& cfg, const GridPoint& point,
                     int trial);

// Mean and sample standard deviation over the non-failed trials of each
// grid point.
std::vector<SummaryRow> Summarize(const ExperimentConfig& cfg,
                                  const std::vector<GridPoint>& grid,
                                  const std::vector<TrialRecord>& trials);

// Validates `cfg`, then runs every trial on a bounded worker pool.
absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentConfig& cfg);

}  // namespace dpcov

#endif  // DPCOV_EXPERIMENT_H_
