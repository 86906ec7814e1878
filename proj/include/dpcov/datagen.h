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

// Synthetic sparse covariance models.
//
// A model is built in three steps: a symmetric zero-diagonal base matrix with
// a prescribed number of nonzero off-diagonal entries, a diagonal shift
// lambda * I that makes it PSD, and a division by c. Samples are then drawn
// from N(0, U) through the symmetric square root of U.

#ifndef DPCOV_DATAGEN_H_
#define DPCOV_DATAGEN_H_

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpcov/rng.h"
#include "dpcov/sample_set.h"
#include "dpcov/sym_matrix.h"

namespace dpcov {

inline constexpr double kDefaultLambda = 50.0;
inline constexpr double kDefaultScaleDivisor = 200.0;

// Magnitudes of the nonzero base entries are uniform on [min, max]; each
// entry gets an independent random sign.
struct BaseEntryRange {
  double min_magnitude = 0.5;
  double max_magnitude = 1.0;
};

// Number of symmetric off-diagonal pairs a p x p base with ratio `sr`
// carries: floor(sr * p^2 / 2). The base has twice this many nonzeros.
int64_t NonzeroPairCount(int p, double sr);

absl::StatusOr<SymMatrix> GenerateSparseBase(int p, double sr, Rng& rng,
                                             const BaseEntryRange& range = {});

struct GroundTruthModel {
  int p = 0;
  double sr = 0;  // realized nonzero fraction of the base, nonzeros / p^2
  double lambda = kDefaultLambda;
  double c = kDefaultScaleDivisor;
  SymMatrix covariance = SymMatrix::Zero(1);
  double min_eigenvalue = 0;
  // Symmetric square root of `covariance`, negative eigenvalues clipped.
  Eigen::MatrixXd sqrt_factor;
};

// U = (base + lambda I) / c, validated PSD by eigendecomposition.
absl::StatusOr<GroundTruthModel> BuildCovariance(
    const SymMatrix& base, double lambda = kDefaultLambda,
    double c = kDefaultScaleDivisor);

// n i.i.d. rows from N(0, U). Row i draws from the stream
// DeriveSeed(base, {i}) with `base` taken from `rng`. Norms are recorded,
// never clipped.
absl::StatusOr<SampleSet> SampleGaussian(const GroundTruthModel& model,
                                         int64_t n, Rng& rng);

// Writes `<stem>.csv` (the covariance) and `<stem>.meta.json`.
absl::Status WriteModel(const GroundTruthModel& model, double requested_sr,
                        uint64_t seed, const std::string& stem);

}  // namespace dpcov

#endif  // DPCOV_DATAGEN_H_
