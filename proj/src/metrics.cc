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

#include "dpcov/metrics.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpcov/status_macros.h"

namespace dpcov {
namespace {

constexpr double kSymmetryTolerance = 1e-10;

bool IsNumericallySymmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTolerance * scale;
}

}  // namespace

absl::string_view NormName(NormKind kind) {
  switch (kind) {
    case NormKind::kL1:
      return "l1";
    case NormKind::kL2:
      return "l2";
    case NormKind::kLinf:
      return "linf";
  }
  return "unknown";
}

double OperatorNorm1(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

double OperatorNormInf(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

absl::StatusOr<double> OperatorNorm2(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) {
    return absl::InvalidArgumentError("spectral norm of non-finite matrix");
  }
  if (IsNumericallySymmetric(m)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      return absl::InternalError("numeric failure in symmetric eigensolver");
    }
    const Eigen::VectorXd& ev = solver.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

double FrobeniusNorm(const Eigen::MatrixXd& m) { return m.norm(); }

absl::StatusOr<double> OperatorNorm(const Eigen::MatrixXd& m, NormKind kind) {
  switch (kind) {
    case NormKind::kL1:
      return OperatorNorm1(m);
    case NormKind::kL2:
      return OperatorNorm2(m);
    case NormKind::kLinf:
      return OperatorNormInf(m);
  }
  return absl::InvalidArgumentError("unknown norm kind");
}

absl::StatusOr<double> RelativeError(const SymMatrix& estimate,
                                     const SymMatrix& truth, NormKind kind) {
  if (estimate.dim() != truth.dim()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dimension mismatch: ", estimate.dim(), " vs ", truth.dim()));
  }
  DPCOV_ASSIGN_OR_RETURN(const double denom, OperatorNorm(truth.matrix(), kind));
  if (denom == 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("truth has zero ", NormName(kind), " norm"));
  }
  DPCOV_ASSIGN_OR_RETURN(
      const double num,
      OperatorNorm(estimate.matrix() - truth.matrix(), kind));
  return num / denom;
}

}  // namespace dpcov
