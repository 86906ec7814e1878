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

#include "dpcov/ldp.h"

#include "absl/strings/str_cat.h"
#include "dpcov/status_macros.h"

namespace dpcov {

absl::StatusOr<NoisyRecord> PerturbRecord(const Eigen::VectorXd& x,
                                          const NoiseScale& scale, Rng& rng,
                                          NormPolicy policy) {
  if (x.size() == 0) {
    return absl::InvalidArgumentError("record must have dimension >= 1");
  }
  if (policy == NormPolicy::kEnforce && x.norm() > 1.0 + kRowNormTolerance) {
    return absl::InvalidArgumentError(
        absl::StrCat("record l2 norm ", x.norm(), " exceeds 1"));
  }
  const int p = static_cast<int>(x.size());
  SymMatrix outer = SymMatrix::FromUpper(x * x.transpose());
  return NoisyRecord(outer + SampleSymmetricNoise(p, scale, rng));
}

RecordAggregator::RecordAggregator(int dim)
    : sum_(Eigen::MatrixXd::Zero(dim, dim)) {}

absl::Status RecordAggregator::Add(const NoisyRecord& record) {
  if (record.dim() != sum_.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat("record dimension ", record.dim(), " != aggregator ",
                     sum_.rows()));
  }
  sum_ += record.matrix().matrix();
  ++count_;
  return absl::OkStatus();
}

absl::StatusOr<SymMatrix> RecordAggregator::Mean() const {
  if (count_ == 0) {
    return absl::FailedPreconditionError("no records to aggregate");
  }
  return SymMatrix::FromUpper(sum_ / static_cast<double>(count_));
}

absl::StatusOr<SymMatrix> Aggregate(std::span<const NoisyRecord> records) {
  if (records.empty()) {
    return absl::InvalidArgumentError("cannot aggregate an empty record list");
  }
  RecordAggregator aggregator(records.front().dim());
  for (const NoisyRecord& record : records) {
    DPCOV_RETURN_IF_ERROR(aggregator.Add(record));
  }
  return aggregator.Mean();
}

absl::StatusOr<ThresholdingStages> LdpThresholdingStages(
    const SampleSet& data, const PrivacyBudget& budget,
    const EstimatorConfig& cfg, Rng& rng) {
  if (cfg.mode != ThresholdMode::kLocal) {
    return absl::InvalidArgumentError(
        "LDP-thresholding requires the local threshold mode");
  }
  DPCOV_ASSIGN_OR_RETURN(const NoiseScale scale,
                         ResolveNoiseScale(data.n(), budget, cfg));
  DPCOV_ASSIGN_OR_RETURN(const double threshold,
                         ResolveThreshold(data.p(), data.n(), budget, cfg));

  const uint64_t base_seed = rng.NextU64();
  RecordAggregator server(data.p());
  for (int64_t i = 0; i < data.n(); ++i) {
    Rng player_rng(PlayerSeed(base_seed, i));
    DPCOV_ASSIGN_OR_RETURN(NoisyRecord record,
                           PerturbRecord(data.row(i), scale, player_rng));
    DPCOV_RETURN_IF_ERROR(server.Add(record));
  }
  DPCOV_ASSIGN_OR_RETURN(SymMatrix perturbed, server.Mean());
  SymMatrix thresholded =
      HardThreshold(perturbed, threshold, cfg.diagonal_policy);
  DPCOV_ASSIGN_OR_RETURN(SymMatrix projected, PsdProject(thresholded));
  return ThresholdingStages{std::nullopt,          std::move(perturbed),
                            std::move(thresholded), std::move(projected),
                            threshold,             scale.sigma()};
}

absl::StatusOr<SymMatrix> LdpThresholding(const SampleSet& data,
                                          const PrivacyBudget& budget,
                                          const EstimatorConfig& cfg,
                                          Rng& rng) {
  DPCOV_ASSIGN_OR_RETURN(ThresholdingStages stages,
                         LdpThresholdingStages(data, budget, cfg, rng));
  return std::move(stages.projected);
}

}  // namespace dpcov
