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

// Operator norms and relative errors.
//
// For any w in [1, inf], ||A||_w <= max(||A||_1, ||A||_2, ||A||_inf), so the
// three norms here bound the whole lw family.

#ifndef DPCOV_METRICS_H_
#define DPCOV_METRICS_H_

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpcov/sym_matrix.h"

namespace dpcov {

enum class NormKind { kL1, kL2, kLinf };

absl::string_view NormName(NormKind kind);

// Max absolute column sum.
double OperatorNorm1(const Eigen::MatrixXd& m);
// Max absolute row sum.
double OperatorNormInf(const Eigen::MatrixXd& m);
// Largest singular value. Symmetric input (max |m - m^T| <= 1e-10 * scale)
// goes through the symmetric eigensolver, everything else through SVD.
absl::StatusOr<double> OperatorNorm2(const Eigen::MatrixXd& m);

double FrobeniusNorm(const Eigen::MatrixXd& m);

absl::StatusOr<double> OperatorNorm(const Eigen::MatrixXd& m, NormKind kind);

// ||estimate - truth|| / ||truth||; fails when ||truth|| == 0.
absl::StatusOr<double> RelativeError(const SymMatrix& estimate,
                                     const SymMatrix& truth, NormKind kind);

}  // namespace dpcov

#endif  // DPCOV_METRICS_H_
