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

// Local-model thresholding, simulated in one process.
//
// Each player i releases x_i x_i^T + z_i with z_i symmetric Gaussian at the
// local scale sqrt(2 ln(1.25/delta)) / eps. The server averages the n noisy
// records, thresholds with the local threshold and projects onto the PSD
// cone. The protocol is one round, so there is no message layer.
//
// Player i draws its noise from the stream DeriveSeed(base, {i}) where `base`
// is one 64-bit draw from the caller's rng; results do not depend on the order
// in which records are produced. Aggregation sums in player-index order.

#ifndef DPCOV_LDP_H_
#define DPCOV_LDP_H_

#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpcov/estimator.h"
#include "dpcov/mechanism.h"
#include "dpcov/rng.h"
#include "dpcov/sample_set.h"
#include "dpcov/sym_matrix.h"

namespace dpcov {

// One player's released matrix.
class NoisyRecord {
 public:
  explicit NoisyRecord(SymMatrix matrix) : matrix_(std::move(matrix)) {}

  int dim() const { return matrix_.dim(); }
  const SymMatrix& matrix() const { return matrix_; }

 private:
  SymMatrix matrix_;
};

absl::StatusOr<NoisyRecord> PerturbRecord(
    const Eigen::VectorXd& x, const NoiseScale& scale, Rng& rng,
    NormPolicy policy = NormPolicy::kRecord);

// Running entrywise mean of records, accumulated in insertion order.
class RecordAggregator {
 public:
  explicit RecordAggregator(int dim);

  absl::Status Add(const NoisyRecord& record);
  int64_t count() const { return count_; }

  // Mean of all records added so far; fails if none were.
  absl::StatusOr<SymMatrix> Mean() const;

 private:
  Eigen::MatrixXd sum_;
  int64_t count_ = 0;
};

absl::StatusOr<SymMatrix> Aggregate(std::span<const NoisyRecord> records);

// Seed of player `index`'s noise stream given the protocol base seed.
inline uint64_t PlayerSeed(uint64_t base_seed, int64_t index) {
  return DeriveSeed(base_seed, {static_cast<uint64_t>(index)});
}

absl::StatusOr<ThresholdingStages> LdpThresholdingStages(
    const SampleSet& data, const PrivacyBudget& budget,
    const EstimatorConfig& cfg, Rng& rng);

absl::StatusOr<SymMatrix> LdpThresholding(const SampleSet& data,
                                          const PrivacyBudget& budget,
                                          const EstimatorConfig& cfg, Rng& rng);

}  // namespace dpcov

#endif  // DPCOV_LDP_H_
