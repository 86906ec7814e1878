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

#include "dpcov/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "dpcov/ldp.h"
#include "dpcov/matrix_io.h"
#include "dpcov/metrics.h"
#include "dpcov/status_macros.h"

namespace dpcov {
namespace {

// Slack on the per-trial norm inequalities.
constexpr double kInequalitySlack = 1e-10;

template <typename T>
absl::Status CheckNonEmpty(const std::vector<T>& values,
                           absl::string_view name) {
  if (values.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", name, "' needs at least one value"));
  }
  return absl::OkStatus();
}

absl::Status CheckSingle(size_t size, absl::string_view name, Setting setting) {
  if (size != 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "setting '", SettingName(setting), "' sweeps a different axis; '",
        name, "' must have exactly one value (got ", size,
        "). Use --setting custom to sweep several axes."));
  }
  return absl::OkStatus();
}

EstimatorConfig MakeEstimatorConfig(const ExperimentConfig& cfg) {
  EstimatorConfig ec;
  ec.gamma = cfg.gamma;
  ec.diagonal_policy = cfg.diagonal_policy;
  ec.sensitivity_multiplier = cfg.sensitivity_multiplier;
  ec.sigma_override = cfg.sigma_override;
  ec.threshold_override = cfg.threshold_override;
  ec.mode = cfg.algorithm == Algorithm::kLocal ? ThresholdMode::kLocal
                                               : ThresholdMode::kCentral;
  return ec;
}

absl::Status RunTrialInto(const ExperimentConfig& cfg, const GridPoint& point,
                          TrialRecord& rec) {
  Rng trial_rng(rec.seed);
  Rng model_rng = trial_rng.Fork(0);
  Rng sample_rng = trial_rng.Fork(1);
  Rng mechanism_rng = trial_rng.Fork(2);

  DPCOV_ASSIGN_OR_RETURN(
      const SymMatrix base,
      GenerateSparseBase(point.p, point.sr, model_rng, cfg.base_range));
  DPCOV_ASSIGN_OR_RETURN(const GroundTruthModel model,
                         BuildCovariance(base, cfg.lambda, cfg.c));
  DPCOV_ASSIGN_OR_RETURN(SampleSet data,
                         SampleGaussian(model, point.n, sample_rng));
  rec.fraction_rows_outside_unit_ball = data.fraction_exceeding_unit_norm();
  if (cfg.clip_norm) data = ClipToUnitBall(data);

  DPCOV_ASSIGN_OR_RETURN(const PrivacyBudget budget,
                         PrivacyBudget::Create(point.epsilon, point.delta));
  const EstimatorConfig ec = MakeEstimatorConfig(cfg);
  const SymMatrix& truth = model.covariance;

  std::optional<SymMatrix> estimate;
  std::optional<SymMatrix> thresholded;
  switch (cfg.algorithm) {
    case Algorithm::kNaive: {
      DPCOV_ASSIGN_OR_RETURN(estimate,
                             NaiveDpEstimate(data, budget, mechanism_rng, ec));
      break;
    }
    case Algorithm::kCentral: {
      DPCOV_ASSIGN_OR_RETURN(
          ThresholdingStages stages,
          DpThresholdingStages(data, budget, ec, mechanism_rng));
      estimate = std::move(stages.projected);
      thresholded = std::move(stages.thresholded);
      break;
    }
    case Algorithm::kLocal: {
      DPCOV_ASSIGN_OR_RETURN(
          ThresholdingStages stages,
          LdpThresholdingStages(data, budget, ec, mechanism_rng));
      estimate = std::move(stages.projected);
      thresholded = std::move(stages.thresholded);
      break;
    }
  }

  DPCOV_ASSIGN_OR_RETURN(rec.rel_err_l1,
                         RelativeError(*estimate, truth, NormKind::kL1));
  DPCOV_ASSIGN_OR_RETURN(rec.rel_err_l2,
                         RelativeError(*estimate, truth, NormKind::kL2));
  DPCOV_ASSIGN_OR_RETURN(rec.rel_err_linf,
                         RelativeError(*estimate, truth, NormKind::kLinf));
  DPCOV_ASSIGN_OR_RETURN(rec.min_eigenvalue, estimate->MinEigenvalue());

  const Eigen::MatrixXd diff = estimate->matrix() - truth.matrix();
  DPCOV_ASSIGN_OR_RETURN(rec.abs_err_l2_projected, OperatorNorm2(diff));
  rec.norm_order_ok =
      rec.abs_err_l2_projected <= OperatorNorm1(diff) + kInequalitySlack;
  if (thresholded.has_value()) {
    DPCOV_ASSIGN_OR_RETURN(
        rec.abs_err_l2_thresholded,
        OperatorNorm2(thresholded->matrix() - truth.matrix()));
    rec.projection_bound_ok = rec.abs_err_l2_projected <=
                              2.0 * rec.abs_err_l2_thresholded +
                                  kInequalitySlack;
    if (rec.min_eigenvalue < kPsdFloor) {
      return absl::InternalError(absl::StrCat(
          "projected estimate has min eigenvalue ", rec.min_eigenvalue));
    }
  }
  return absl::OkStatus();
}

struct MeanStd {
  double mean = 0;
  double std = 0;
};

MeanStd ComputeMeanStd(const std::vector<double>& values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return out;
}

}  // namespace

absl::string_view SettingName(Setting s) {
  switch (s) {
    case Setting::kSparsitySweep:
      return "sparsity-sweep";
    case Setting::kDimensionSweep:
      return "dimension-sweep";
    case Setting::kEpsilonSweep:
      return "epsilon-sweep";
    case Setting::kCustom:
      return "custom";
  }
  return "unknown";
}

absl::string_view AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kCentral:
      return "central";
    case Algorithm::kLocal:
      return "local";
    case Algorithm::kNaive:
      return "naive";
  }
  return "unknown";
}

absl::StatusOr<Setting> ParseSetting(absl::string_view name) {
  for (Setting s : {Setting::kSparsitySweep, Setting::kDimensionSweep,
                    Setting::kEpsilonSweep, Setting::kCustom}) {
    if (name == SettingName(s)) return s;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown setting '", name,
      "'; expected sparsity-sweep, dimension-sweep, epsilon-sweep or custom"));
}

absl::StatusOr<Algorithm> ParseAlgorithm(absl::string_view name) {
  for (Algorithm a : {Algorithm::kCentral, Algorithm::kLocal,
                      Algorithm::kNaive}) {
    if (name == AlgorithmName(a)) return a;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown algorithm '", name, "'; expected central, local or naive"));
}

absl::string_view DiagonalPolicyName(DiagonalPolicy d) {
  return d == DiagonalPolicy::kThresholdAll ? "threshold-all"
                                            : "exempt-diagonal";
}

absl::StatusOr<DiagonalPolicy> ParseDiagonalPolicy(absl::string_view name) {
  if (name == "threshold-all") return DiagonalPolicy::kThresholdAll;
  if (name == "exempt-diagonal") return DiagonalPolicy::kExemptDiagonal;
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown diagonal policy '", name,
      "'; expected threshold-all or exempt-diagonal"));
}

absl::Status ExperimentConfig::Validate() const {
  DPCOV_RETURN_IF_ERROR(CheckNonEmpty(p, "p"));
  DPCOV_RETURN_IF_ERROR(CheckNonEmpty(sr, "sr"));
  DPCOV_RETURN_IF_ERROR(CheckNonEmpty(epsilon, "epsilon"));
  DPCOV_RETURN_IF_ERROR(CheckNonEmpty(n_grid, "n_grid"));
  for (int v : p) {
    if (v < 1) {
      return absl::InvalidArgumentError(absl::StrCat("p must be >= 1, got ", v));
    }
  }
  for (double v : sr) {
    if (!(v >= 0 && v <= 1)) {
      return absl::InvalidArgumentError(
          absl::StrCat("sr must lie in [0, 1], got ", v));
    }
  }
  for (double v : epsilon) {
    if (!(v > 0) || !std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("epsilon must be positive, got ", v));
    }
  }
  for (int64_t v : n_grid) {
    if (v < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("every n in n_grid must be >= 1, got ", v));
    }
  }
  if (trials < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("trials must be >= 1, got ", trials));
  }
  if (delta_rule.kind == DeltaRule::Kind::kFixed &&
      !(delta_rule.value > 0 && delta_rule.value <= 1)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "fixed delta must lie in (0, 1], got ", delta_rule.value));
  }
  if (!(lambda > 0) || !(c > 0)) {
    return absl::InvalidArgumentError("lambda and c must be positive");
  }
  if (!(base_range.min_magnitude >= 0) ||
      !(base_range.max_magnitude >= base_range.min_magnitude)) {
    return absl::InvalidArgumentError(
        "off-diagonal magnitude range must satisfy 0 <= min <= max");
  }
  if (workers < 0) {
    return absl::InvalidArgumentError("workers must be >= 0");
  }
  EstimatorConfig ec;
  ec.gamma = gamma;
  ec.sensitivity_multiplier = sensitivity_multiplier;
  ec.sigma_override = sigma_override;
  ec.threshold_override = threshold_override;
  DPCOV_RETURN_IF_ERROR(ec.Validate());

  switch (setting) {
    case Setting::kSparsitySweep:
      DPCOV_RETURN_IF_ERROR(CheckSingle(p.size(), "p", setting));
      DPCOV_RETURN_IF_ERROR(CheckSingle(epsilon.size(), "epsilon", setting));
      break;
    case Setting::kDimensionSweep:
      DPCOV_RETURN_IF_ERROR(CheckSingle(sr.size(), "sr", setting));
      DPCOV_RETURN_IF_ERROR(CheckSingle(epsilon.size(), "epsilon", setting));
      break;
    case Setting::kEpsilonSweep:
      DPCOV_RETURN_IF_ERROR(CheckSingle(p.size(), "p", setting));
      DPCOV_RETURN_IF_ERROR(CheckSingle(sr.size(), "sr", setting));
      break;
    case Setting::kCustom:
      break;
  }
  return absl::OkStatus();
}

ExperimentConfig DefaultsFor(Setting setting) {
  ExperimentConfig cfg;
  cfg.setting = setting;
  switch (setting) {
    case Setting::kSparsitySweep:
      cfg.p = {100};
      cfg.sr = {0.1, 0.2, 0.3, 0.5};
      cfg.epsilon = {1.0};
      break;
    case Setting::kDimensionSweep:
      cfg.p = {50, 100, 200, 500};
      cfg.sr = {0.2};
      cfg.epsilon = {1.0};
      break;
    case Setting::kEpsilonSweep:
      cfg.p = {200};
      cfg.sr = {0.2};
      cfg.epsilon = {0.1, 0.5, 1.0, 2.0};
      break;
    case Setting::kCustom:
      cfg.p = {100};
      cfg.sr = {0.2};
      cfg.epsilon = {1.0};
      break;
  }
  return cfg;
}

std::vector<GridPoint> ExpandGrid(const ExperimentConfig& cfg) {
  std::vector<GridPoint> grid;
  for (int p : cfg.p) {
    for (double sr : cfg.sr) {
      for (double eps : cfg.epsilon) {
        for (int64_t n : cfg.n_grid) {
          GridPoint g;
          g.index = static_cast<int>(grid.size());
          g.p = p;
          g.sr = sr;
          g.epsilon = eps;
          g.n = n;
          g.delta = cfg.delta_rule.DeltaFor(n);
          grid.push_back(g);
        }
      }
    }
  }
  return grid;
}

absl::string_view SweptAxis(const ExperimentConfig& cfg) {
  switch (cfg.setting) {
    case Setting::kSparsitySweep:
      return "sr";
    case Setting::kDimensionSweep:
      return "p";
    case Setting::kEpsilonSweep:
      return "epsilon";
    case Setting::kCustom:
      break;
  }
  if (cfg.sr.size() > 1) return "sr";
  if (cfg.epsilon.size() > 1) return "epsilon";
  return "p";
}

std::string SeriesLabel(const ExperimentConfig& cfg, const GridPoint& point) {
  std::string label;
  auto add = [&label](absl::string_view key, const std::string& value) {
    if (!label.empty()) label += ',';
    absl::StrAppend(&label, key, "=", value);
  };
  if (cfg.setting != Setting::kCustom) {
    const absl::string_view axis = SweptAxis(cfg);
    if (axis == "sr") add("sr", FormatDouble(point.sr));
    if (axis == "p") add("p", absl::StrCat(point.p));
    if (axis == "epsilon") add("epsilon", FormatDouble(point.epsilon));
    return label;
  }
  if (cfg.p.size() > 1) add("p", absl::StrCat(point.p));
  if (cfg.sr.size() > 1) add("sr", FormatDouble(point.sr));
  if (cfg.epsilon.size() > 1) add("epsilon", FormatDouble(point.epsilon));
  if (label.empty()) add("p", absl::StrCat(point.p));
  return label;
}

TrialRecord RunTrial(const ExperimentConfig& cfg, const GridPoint& point,
                     int trial) {
  TrialRecord rec;
  rec.grid_index = point.index;
  rec.p = point.p;
  rec.sr = point.sr;
  rec.epsilon = point.epsilon;
  rec.delta = point.delta;
  rec.n = point.n;
  rec.trial = trial;
  rec.seed = DeriveSeed(cfg.master_seed, {static_cast<uint64_t>(point.index),
                                          static_cast<uint64_t>(trial)});
  const auto start = std::chrono::steady_clock::now();
  const absl::Status status = RunTrialInto(cfg, point, rec);
  rec.wall_time_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  if (!status.ok()) {
    rec.failed = true;
    rec.error = std::string(status.message());
  }
  return rec;
}

std::vector<SummaryRow> Summarize(const ExperimentConfig& cfg,
                                  const std::vector<GridPoint>& grid,
                                  const std::vector<TrialRecord>& trials) {
  std::vector<SummaryRow> rows;
  rows.reserve(grid.size());
  for (const GridPoint& point : grid) {
    SummaryRow row;
    row.point = point;
    row.series = SeriesLabel(cfg, point);
    std::vector<double> l1, l2, linf;
    for (const TrialRecord& rec : trials) {
      if (rec.grid_index != point.index) continue;
      if (rec.failed) {
        ++row.failed;
        continue;
      }
      l1.push_back(rec.rel_err_l1);
      l2.push_back(rec.rel_err_l2);
      linf.push_back(rec.rel_err_linf);
    }
    row.trials_ok = static_cast<int>(l2.size());
    const MeanStd s1 = ComputeMeanStd(l1);
    const MeanStd s2 = ComputeMeanStd(l2);
    const MeanStd sinf = ComputeMeanStd(linf);
    row.mean_l1 = s1.mean;
    row.std_l1 = s1.std;
    row.mean_l2 = s2.mean;
    row.std_l2 = s2.std;
    row.mean_linf = sinf.mean;
    row.std_linf = sinf.std;
    rows.push_back(std::move(row));
  }
  return rows;
}

absl::StatusOr<ExperimentResult> RunExperiment(const ExperimentConfig& cfg) {
  DPCOV_RETURN_IF_ERROR(cfg.Validate());
  ExperimentResult result;
  result.config = cfg;
  result.grid = ExpandGrid(cfg);

  const size_t tasks = result.grid.size() * static_cast<size_t>(cfg.trials);
  result.trials.resize(tasks);
  size_t worker_count = cfg.workers > 0
                            ? static_cast<size_t>(cfg.workers)
                            : std::max(1u, std::thread::hardware_concurrency());
  worker_count = std::min(worker_count, tasks);

  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t task = next.fetch_add(1); task < tasks;
         task = next.fetch_add(1)) {
      const GridPoint& point = result.grid[task / cfg.trials];
      result.trials[task] =
          RunTrial(cfg, point, static_cast<int>(task % cfg.trials));
    }
  };
  if (worker_count <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (size_t w = 0; w < worker_count; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  for (const TrialRecord& rec : result.trials) {
    if (rec.failed) {
      ++result.failed_trials;
      continue;
    }
    const std::string where = absl::StrFormat(
        "grid %d (p=%d sr=%g eps=%g n=%d) trial %d", rec.grid_index, rec.p,
        rec.sr, rec.epsilon, rec.n, rec.trial);
    if (!rec.projection_bound_ok) {
      result.invariant_violations.push_back(absl::StrCat(
          where, ": ||S+ - U||_2 = ", rec.abs_err_l2_projected,
          " exceeds 2 ||S^ - U||_2 = ", 2 * rec.abs_err_l2_thresholded));
    }
    if (!rec.norm_order_ok) {
      result.invariant_violations.push_back(
          absl::StrCat(where, ": spectral error exceeds l1 error"));
    }
  }
  result.summary = Summarize(cfg, result.grid, result.trials);
  return result;
}

}  // namespace dpcov
