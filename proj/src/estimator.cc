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

#include "dpcov/estimator.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "dpcov/status_macros.h"

namespace dpcov {

absl::Status EstimatorConfig::Validate() const {
  if (!(gamma > 0) || !std::isfinite(gamma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("gamma must be positive and finite, got ", gamma));
  }
  if (!(sensitivity_multiplier > 0) || !std::isfinite(sensitivity_multiplier)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sensitivity multiplier must be positive, got ", sensitivity_multiplier));
  }
  if (sigma_override.has_value() &&
      (!(*sigma_override >= 0) || !std::isfinite(*sigma_override))) {
    return absl::InvalidArgumentError("sigma override must be >= 0");
  }
  if (threshold_override.has_value() &&
      (!(*threshold_override >= 0) || std::isnan(*threshold_override))) {
    return absl::InvalidArgumentError("threshold override must be >= 0");
  }
  return absl::OkStatus();
}

SymMatrix EmpiricalCovariance(const SampleSet& data) {
  const int p = data.p();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(p, p);
  gram.selfadjointView<Eigen::Upper>().rankUpdate(data.rows().transpose());
  gram /= static_cast<double>(data.n());
  return SymMatrix::FromUpper(gram);
}

SymMatrix PerturbCovariance(const SymMatrix& cov, const NoiseScale& scale,
                            Rng& rng) {
  return cov + SampleSymmetricNoise(cov.dim(), scale, rng);
}

absl::StatusOr<double> ThresholdValue(int p, int64_t n,
                                      const PrivacyBudget& budget,
                                      const EstimatorConfig& cfg) {
  if (p < 1 || n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("threshold needs p >= 1 and n >= 1, got p=", p, " n=", n));
  }
  DPCOV_RETURN_IF_ERROR(cfg.Validate());
  const double log_p = std::log(static_cast<double>(p));
  const double nd = static_cast<double>(n);
  const double sampling_term = cfg.gamma * std::sqrt(log_p / nd);
  const double privacy_denominator =
      cfg.mode == ThresholdMode::kCentral ? nd * budget.epsilon()
                                          : std::sqrt(nd) * budget.epsilon();
  const double privacy_term = 4.0 * GaussianCalibrationFactor(budget) *
                              std::sqrt(log_p) / privacy_denominator;
  return sampling_term + privacy_term;
}

SymMatrix HardThreshold(const SymMatrix& m, double threshold,
                        DiagonalPolicy policy) {
  const int p = m.dim();
  Eigen::MatrixXd out(p, p);
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i <= j; ++i) {
      const double v = m(i, j);
      const bool keep = (i == j && policy == DiagonalPolicy::kExemptDiagonal) ||
                        std::abs(v) > threshold;
      out(i, j) = keep ? v : 0.0;
    }
  }
  return SymMatrix::FromUpper(out);
}

absl::StatusOr<SymMatrix> PsdProject(const SymMatrix& m) {
  if (!m.matrix().allFinite()) {
    return absl::InternalError("PSD projection input has non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.matrix());
  if (solver.info() != Eigen::Success) {
    return absl::InternalError(
        "numeric failure: symmetric eigensolver did not converge");
  }
  const Eigen::VectorXd clipped = solver.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXd& v = solver.eigenvectors();
  return SymMatrix::Symmetrize(v * clipped.asDiagonal() * v.transpose());
}

absl::StatusOr<NoiseScale> ResolveNoiseScale(int64_t n,
                                             const PrivacyBudget& budget,
                                             const EstimatorConfig& cfg) {
  DPCOV_RETURN_IF_ERROR(cfg.Validate());
  if (cfg.sigma_override.has_value()) {
    return NoiseScale::Create(*cfg.sigma_override);
  }
  if (cfg.mode == ThresholdMode::kCentral) {
    return CentralNoiseScale(n, budget, cfg.sensitivity_multiplier);
  }
  return LocalNoiseScale(budget, cfg.sensitivity_multiplier);
}

absl::StatusOr<double> ResolveThreshold(int p, int64_t n,
                                        const PrivacyBudget& budget,
                                        const EstimatorConfig& cfg) {
  if (cfg.threshold_override.has_value()) {
    DPCOV_RETURN_IF_ERROR(cfg.Validate());
    return *cfg.threshold_override;
  }
  return ThresholdValue(p, n, budget, cfg);
}

absl::StatusOr<ThresholdingStages> DpThresholdingStages(
    const SampleSet& data, const PrivacyBudget& budget,
    const EstimatorConfig& cfg, Rng& rng) {
  if (cfg.mode != ThresholdMode::kCentral) {
    return absl::InvalidArgumentError(
        "DP-thresholding requires the central threshold mode");
  }
  DPCOV_ASSIGN_OR_RETURN(const NoiseScale scale,
                         ResolveNoiseScale(data.n(), budget, cfg));
  DPCOV_ASSIGN_OR_RETURN(const double threshold,
                         ResolveThreshold(data.p(), data.n(), budget, cfg));
  SymMatrix empirical = EmpiricalCovariance(data);
  SymMatrix perturbed = PerturbCovariance(empirical, scale, rng);
  SymMatrix thresholded =
      HardThreshold(perturbed, threshold, cfg.diagonal_policy);
  DPCOV_ASSIGN_OR_RETURN(SymMatrix projected, PsdProject(thresholded));
  return ThresholdingStages{std::move(empirical), std::move(perturbed),
                            std::move(thresholded), std::move(projected),
                            threshold, scale.sigma()};
}

absl::StatusOr<SymMatrix> DpThresholding(const SampleSet& data,
                                         const PrivacyBudget& budget,
                                         const EstimatorConfig& cfg,
                                         Rng& rng) {
  DPCOV_ASSIGN_OR_RETURN(ThresholdingStages stages,
                         DpThresholdingStages(data, budget, cfg, rng));
  return std::move(stages.projected);
}

absl::StatusOr<SymMatrix> NaiveDpEstimate(const SampleSet& data,
                                          const PrivacyBudget& budget,
                                          Rng& rng,
                                          const EstimatorConfig& cfg) {
  EstimatorConfig central = cfg;
  central.mode = ThresholdMode::kCentral;
  DPCOV_ASSIGN_OR_RETURN(const NoiseScale scale,
                         ResolveNoiseScale(data.n(), budget, central));
  return PerturbCovariance(EmpiricalCovariance(data), scale, rng);
}

}  // namespace dpcov
