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

// Central-model sparse covariance estimation.
//
// The thresholding estimator runs four stages on mean-zero samples x_1..x_n:
//
//   1. empirical covariance  S  = (1/n) sum_i x_i x_i^T
//   2. perturbation          S~ = S + N, N symmetric Gaussian (central sigma)
//   3. hard thresholding     S^_ij = S~_ij * 1[|S~_ij| > T]
//   4. PSD projection        S+ = sum_k max(lambda_k, 0) v_k v_k^T
//
// with T = gamma sqrt(ln p / n) + 4 sqrt(2 ln(1.25/delta)) sqrt(ln p) / (n eps)
// in the central model; the local model divides the second term by
// sqrt(n) eps instead. The naive baseline stops after stage 2.

#ifndef DPCOV_ESTIMATOR_H_
#define DPCOV_ESTIMATOR_H_

#include <cstdint>
#include <optional>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpcov/mechanism.h"
#include "dpcov/rng.h"
#include "dpcov/sample_set.h"
#include "dpcov/sym_matrix.h"

namespace dpcov {

// Numerical floor on the minimum eigenvalue of projected outputs.
inline constexpr double kPsdFloor = -1e-10;

enum class DiagonalPolicy {
  kThresholdAll,     // indicator applies to every (i, j)
  kExemptDiagonal,   // variances always pass through
};

enum class ThresholdMode { kCentral, kLocal };

struct EstimatorConfig {
  double gamma = 0.5;
  DiagonalPolicy diagonal_policy = DiagonalPolicy::kThresholdAll;
  ThresholdMode mode = ThresholdMode::kCentral;
  // Scales the calibrated noise standard deviation; 1 reproduces the
  // reference calibration.
  double sensitivity_multiplier = 1.0;

  // Test-mode overrides. When set, they replace the calibrated noise sigma
  // and the formula threshold respectively.
  std::optional<double> sigma_override;
  std::optional<double> threshold_override;

  absl::Status Validate() const;
};

SymMatrix EmpiricalCovariance(const SampleSet& data);

// cov + N, N drawn by SampleSymmetricNoise(cov.dim(), scale, rng).
SymMatrix PerturbCovariance(const SymMatrix& cov, const NoiseScale& scale,
                            Rng& rng);

// Formula threshold for `cfg.mode`; ignores cfg.threshold_override.
absl::StatusOr<double> ThresholdValue(int p, int64_t n,
                                      const PrivacyBudget& budget,
                                      const EstimatorConfig& cfg);

// Keeps m(i, j) iff |m(i, j)| > threshold (strict).
SymMatrix HardThreshold(const SymMatrix& m, double threshold,
                        DiagonalPolicy policy);

// Frobenius-nearest PSD matrix via eigenvalue clipping. Fails with an
// internal error if the eigensolver does not converge or the input is not
// finite.
absl::StatusOr<SymMatrix> PsdProject(const SymMatrix& m);

// Every intermediate of one estimator run.
struct ThresholdingStages {
  std::optional<SymMatrix> empirical;  // central pipeline only
  SymMatrix perturbed;
  SymMatrix thresholded;
  SymMatrix projected;
  double threshold = 0;
  double sigma = 0;
};

// Resolves the noise scale `cfg` asks for: the override if present,
// otherwise the calibrated scale for cfg.mode.
absl::StatusOr<NoiseScale> ResolveNoiseScale(int64_t n,
                                             const PrivacyBudget& budget,
                                             const EstimatorConfig& cfg);

// Resolves the threshold: the override if present, otherwise the formula.
absl::StatusOr<double> ResolveThreshold(int p, int64_t n,
                                        const PrivacyBudget& budget,
                                        const EstimatorConfig& cfg);

absl::StatusOr<ThresholdingStages> DpThresholdingStages(
    const SampleSet& data, const PrivacyBudget& budget,
    const EstimatorConfig& cfg, Rng& rng);

// Central DP-thresholding estimate; symmetric and PSD.
absl::StatusOr<SymMatrix> DpThresholding(const SampleSet& data,
                                         const PrivacyBudget& budget,
                                         const EstimatorConfig& cfg, Rng& rng);

// Perturbed empirical covariance with no thresholding and no projection.
// Consumes `rng` exactly as the first stage of DpThresholding does.
absl::StatusOr<SymMatrix> NaiveDpEstimate(const SampleSet& data,
                                          const PrivacyBudget& budget,
                                          Rng& rng,
                                          const EstimatorConfig& cfg = {});

}  // namespace dpcov

#endif  // DPCOV_ESTIMATOR_H_
