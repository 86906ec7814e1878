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

#ifndef DPCOV_SYM_MATRIX_H_
#define DPCOV_SYM_MATRIX_H_

#include <Eigen/Dense>

#include "absl/status/statusor.h"

namespace dpcov {

// Dense real symmetric p x p matrix. Every instance satisfies
// m(i, j) == m(j, i) bit-exactly; the constructors below are the only way in.
// Values are immutable once built and may be shared read-only across threads.
class SymMatrix {
 public:
  // Validates exact symmetry; rejects empty and non-square input.
  static absl::StatusOr<SymMatrix> Create(Eigen::MatrixXd entries);

  // Returns (m + m^T) / 2 followed by a mirror of the lower triangle, which
  // absorbs round-off asymmetry.
  static SymMatrix Symmetrize(const Eigen::MatrixXd& m);

  // Builds from the upper triangle (including the diagonal) of `m`.
  static SymMatrix FromUpper(const Eigen::MatrixXd& m);

  static SymMatrix Zero(int dim);
  static SymMatrix Identity(int dim);

  int dim() const { return static_cast<int>(entries_.rows()); }
  double operator()(int i, int j) const { return entries_(i, j); }
  const Eigen::MatrixXd& matrix() const { return entries_; }

  // Checks the invariant; always true for a constructed value.
  bool IsExactlySymmetric() const { return IsExactlySymmetric(entries_); }
  static bool IsExactlySymmetric(const Eigen::MatrixXd& m);

  // Smallest eigenvalue from a full symmetric eigendecomposition.
  absl::StatusOr<double> MinEigenvalue() const;

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
    return a.entries_.rows() == b.entries_.rows() && a.entries_ == b.entries_;
  }

 private:
  explicit SymMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {}

  Eigen::MatrixXd entries_;
};

// Sum and difference of equal-dimension matrices; symmetric by construction.
SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
SymMatrix operator*(double scale, const SymMatrix& m);

}  // namespace dpcov

#endif  // DPCOV_SYM_MATRIX_H_
