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

#include "dpcov/mechanism.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpcov {
namespace {

absl::Status ValidateMultiplier(double sensitivity_multiplier) {
  if (!(sensitivity_multiplier > 0) || !std::isfinite(sensitivity_multiplier)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sensitivity multiplier must be positive and finite, got ",
                     sensitivity_multiplier));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double epsilon,
                                                    double delta) {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive and finite, got ", epsilon));
  }
  if (!(delta > 0) || !(delta <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1], got ", delta));
  }
  return PrivacyBudget(epsilon, delta);
}

absl::StatusOr<NoiseScale> NoiseScale::Create(double sigma) {
  if (!(sigma >= 0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("noise sigma must be nonnegative and finite, got ", sigma));
  }
  return NoiseScale(sigma);
}

double GaussianCalibrationFactor(const PrivacyBudget& budget) {
  return std::sqrt(2.0 * std::log(1.25 / budget.delta()));
}

absl::StatusOr<NoiseScale> CentralNoiseScale(int64_t n,
                                             const PrivacyBudget& budget,
                                             double sensitivity_multiplier) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("sample count must be at least 1, got ", n));
  }
  if (absl::Status s = ValidateMultiplier(sensitivity_multiplier); !s.ok()) {
    return s;
  }
  return NoiseScale::Create(sensitivity_multiplier *
                            GaussianCalibrationFactor(budget) /
                            (static_cast<double>(n) * budget.epsilon()));
}

absl::StatusOr<NoiseScale> LocalNoiseScale(const PrivacyBudget& budget,
                                           double sensitivity_multiplier) {
  if (absl::Status s = ValidateMultiplier(sensitivity_multiplier); !s.ok()) {
    return s;
  }
  return NoiseScale::Create(sensitivity_multiplier *
                            GaussianCalibrationFactor(budget) /
                            budget.epsilon());
}

SymMatrix SampleSymmetricNoise(int p, const NoiseScale& scale, Rng& rng) {
  Eigen::MatrixXd noise(p, p);
  const double sigma = scale.sigma();
  for (int i = 0; i < p; ++i) {
    for (int j = i; j < p; ++j) {
      const double z = sigma * rng.Gaussian();
      noise(i, j) = z;
      noise(j, i) = z;
    }
  }
  return SymMatrix::FromUpper(noise);
}

}  // namespace dpcov
