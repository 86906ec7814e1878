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

#include "dpcov/sym_matrix.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpcov {

absl::StatusOr<SymMatrix> SymMatrix::Create(Eigen::MatrixXd entries) {
  if (entries.rows() == 0 || entries.rows() != entries.cols()) {
    return absl::InvalidArgumentError(
        absl::StrCat("SymMatrix requires a non-empty square matrix, got ",
                     entries.rows(), "x", entries.cols()));
  }
  if (!IsExactlySymmetric(entries)) {
    return absl::InvalidArgumentError("SymMatrix input is not symmetric");
  }
  return SymMatrix(std::move(entries));
}

SymMatrix SymMatrix::Symmetrize(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd half = 0.5 * (m + m.transpose());
  return FromUpper(half);
}

SymMatrix SymMatrix::FromUpper(const Eigen::MatrixXd& m) {
  Eigen::MatrixXd out = m;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < out.rows(); ++i) out(i, j) = out(j, i);
  }
  return SymMatrix(std::move(out));
}

SymMatrix SymMatrix::Zero(int dim) {
  return SymMatrix(Eigen::MatrixXd::Zero(dim, dim));
}

SymMatrix SymMatrix::Identity(int dim) {
  return SymMatrix(Eigen::MatrixXd::Identity(dim, dim));
}

bool SymMatrix::IsExactlySymmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < m.rows(); ++i) {
      if (m(i, j) != m(j, i)) return false;
    }
  }
  return true;
}

absl::StatusOr<double> SymMatrix::MinEigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      entries_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    return absl::InternalError("symmetric eigensolver did not converge");
  }
  return solver.eigenvalues()(0);
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  return SymMatrix::FromUpper(a.matrix() + b.matrix());
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  return SymMatrix::FromUpper(a.matrix() - b.matrix());
}

SymMatrix operator*(double scale, const SymMatrix& m) {
  return SymMatrix::FromUpper(scale * m.matrix());
}

}  // namespace dpcov
