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

// Gaussian mechanism calibration and symmetric noise sampling.
//
// Both the central and the local estimators perturb a covariance-like matrix
// with a symmetric Gaussian matrix whose upper triangle (diagonal included)
// is i.i.d. N(0, sigma^2) and whose lower triangle mirrors it. The two models
// differ only in sigma:
//
//   central:  sigma = sqrt(2 ln(1.25 / delta)) / (n * epsilon)
//   local:    sigma = sqrt(2 ln(1.25 / delta)) / epsilon
//
// All logarithms are natural. A sensitivity multiplier (default 1) scales
// both formulas for callers that want a stricter calibration.

#ifndef DPCOV_MECHANISM_H_
#define DPCOV_MECHANISM_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "dpcov/rng.h"
#include "dpcov/sym_matrix.h"

namespace dpcov {

// (epsilon, delta) pair. epsilon > 0 and 0 < delta <= 1. Budgets with
// epsilon > 1 are accepted but flagged, since the privacy guarantee of the
// calibration above is only stated for epsilon <= 1.
class PrivacyBudget {
 public:
  static absl::StatusOr<PrivacyBudget> Create(double epsilon, double delta);

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  bool exceeds_unit_epsilon() const { return epsilon_ > 1.0; }

 private:
  PrivacyBudget(double epsilon, double delta)
      : epsilon_(epsilon), delta_(delta) {}

  double epsilon_;
  double delta_;
};

// Standard deviation of each independent noise entry. Zero is only meaningful
// in the noiseless test mode.
class NoiseScale {
 public:
  static absl::StatusOr<NoiseScale> Create(double sigma);
  static NoiseScale Zero() { return NoiseScale(0.0); }

  double sigma() const { return sigma_; }

 private:
  explicit NoiseScale(double sigma) : sigma_(sigma) {}

  double sigma_;
};

// sqrt(2 ln(1.25 / delta)); the factor shared by both noise scales and the
// privacy term of the threshold.
double GaussianCalibrationFactor(const PrivacyBudget& budget);

absl::StatusOr<NoiseScale> CentralNoiseScale(
    int64_t n, const PrivacyBudget& budget,
    double sensitivity_multiplier = 1.0);

absl::StatusOr<NoiseScale> LocalNoiseScale(
    const PrivacyBudget& budget, double sensitivity_multiplier = 1.0);

// Draws the p(p+1)/2 upper-triangle entries in row-major order (i <= j) and
// mirrors them. Always consumes exactly p(p+1)/2 normal variates from `rng`,
// including when sigma is zero.
SymMatrix SampleSymmetricNoise(int p, const NoiseScale& scale, Rng& rng);

}  // namespace dpcov

#endif  // DPCOV_MECHANISM_H_
