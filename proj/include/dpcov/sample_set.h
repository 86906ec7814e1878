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

#ifndef DPCOV_SAMPLE_SET_H_
#define DPCOV_SAMPLE_SET_H_

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "absl/status/statusor.h"

namespace dpcov {

// Slack allowed on the unit-norm row bound.
inline constexpr double kRowNormTolerance = 1e-9;

enum class NormPolicy {
  kRecord,   // note whether every row satisfies ||x||_2 <= 1
  kEnforce,  // reject sets that violate it
};

// n x p observations, one sample per row. Samples are assumed mean zero; no
// centering is ever applied.
class SampleSet {
 public:
  static absl::StatusOr<SampleSet> Create(Eigen::MatrixXd rows,
                                          NormPolicy policy = NormPolicy::kRecord);

  // Ragged input is rejected with a dimension-mismatch error.
  static absl::StatusOr<SampleSet> FromRowVectors(
      const std::vector<std::vector<double>>& rows,
      NormPolicy policy = NormPolicy::kRecord);

  int64_t n() const { return rows_.rows(); }
  int p() const { return static_cast<int>(rows_.cols()); }
  const Eigen::MatrixXd& rows() const { return rows_; }
  Eigen::VectorXd row(int64_t i) const { return rows_.row(i).transpose(); }

  // True iff every row has l2 norm <= 1 + kRowNormTolerance.
  bool within_unit_ball() const { return rows_exceeding_ == 0; }
  int64_t rows_exceeding_unit_norm() const { return rows_exceeding_; }
  double fraction_exceeding_unit_norm() const {
    return static_cast<double>(rows_exceeding_) / static_cast<double>(n());
  }

 private:
  friend SampleSet ClipToUnitBall(const SampleSet& data);

  SampleSet(Eigen::MatrixXd rows, int64_t rows_exceeding)
      : rows_(std::move(rows)), rows_exceeding_(rows_exceeding) {}

  Eigen::MatrixXd rows_;
  int64_t rows_exceeding_;
};

// Projects each row onto the closed unit l2 ball.
SampleSet ClipToUnitBall(const SampleSet& data);

}  // namespace dpcov

#endif  // DPCOV_SAMPLE_SET_H_
