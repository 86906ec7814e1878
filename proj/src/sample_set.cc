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

#include "dpcov/sample_set.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpcov {

absl::StatusOr<SampleSet> SampleSet::Create(Eigen::MatrixXd rows,
                                            NormPolicy policy) {
  if (rows.rows() < 1 || rows.cols() < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sample set needs n >= 1 and p >= 1, got ", rows.rows(), "x",
        rows.cols()));
  }
  if (!rows.allFinite()) {
    return absl::InvalidArgumentError("sample set contains non-finite values");
  }
  int64_t exceeding = 0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const double norm = rows.row(i).norm();
    if (norm > 1.0 + kRowNormTolerance) {
      if (policy == NormPolicy::kEnforce) {
        return absl::InvalidArgumentError(absl::StrCat(
            "row ", i, " has l2 norm ", norm, " > 1 under enforce-norm"));
      }
      ++exceeding;
    }
  }
  return SampleSet(std::move(rows), exceeding);
}

absl::StatusOr<SampleSet> SampleSet::FromRowVectors(
    const std::vector<std::vector<double>>& rows, NormPolicy policy) {
  if (rows.empty()) {
    return absl::InvalidArgumentError("sample set needs at least one row");
  }
  const size_t p = rows.front().size();
  Eigen::MatrixXd m(rows.size(), p);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != p) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row ", i, " has dimension ", rows[i].size(), ", expected ", p));
    }
    for (size_t j = 0; j < p; ++j) m(i, j) = rows[i][j];
  }
  return Create(std::move(m), policy);
}

SampleSet ClipToUnitBall(const SampleSet& data) {
  Eigen::MatrixXd rows = data.rows();
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const double norm = rows.row(i).norm();
    if (norm > 1.0) rows.row(i) /= norm;
  }
  // Clipped rows have norm 1 up to rounding, well inside the tolerance.
  return SampleSet(std::move(rows), 0);
}

}  // namespace dpcov
