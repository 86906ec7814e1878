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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

namespace dpcov {
namespace {

TEST(SymMatrixTest, CreateRejectsAsymmetric) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 2.0000001, 1;
  auto s = SymMatrix::Create(m);
  EXPECT_FALSE(s.ok());
  EXPECT_EQ(s.status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(SymMatrixTest, CreateRejectsEmptyAndNonSquare) {
  EXPECT_FALSE(SymMatrix::Create(Eigen::MatrixXd(0, 0)).ok());
  EXPECT_FALSE(SymMatrix::Create(Eigen::MatrixXd::Zero(2, 3)).ok());
}

TEST(SymMatrixTest, CreateAcceptsSymmetric) {
  Eigen::MatrixXd m(2, 2);
  m << 1, -3, -3, 4;
  auto s = SymMatrix::Create(m);
  ASSERT_TRUE(s.ok());
  EXPECT_EQ(s->dim(), 2);
  EXPECT_EQ((*s)(0, 1), -3);
}

TEST(SymMatrixTest, FromUpperMirrors) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 5, 99, 2;
  SymMatrix s = SymMatrix::FromUpper(m);
  EXPECT_EQ(s(1, 0), 5);
  EXPECT_TRUE(s.IsExactlySymmetric());
}

TEST(SymMatrixTest, SymmetrizeAverages) {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 4, 3;
  SymMatrix s = SymMatrix::Symmetrize(m);
  EXPECT_EQ(s(0, 1), 3);
  EXPECT_EQ(s(1, 0), 3);
}

TEST(SymMatrixTest, ArithmeticStaysSymmetric) {
  Eigen::MatrixXd a(3, 3), b(3, 3);
  a << 0.1, 0.2, 0.3, 0.2, 0.5, 0.7, 0.3, 0.7, 1.1;
  b << 1e-17, 3.3, 1.0 / 3, 3.3, 2, 0.9, 1.0 / 3, 0.9, 7;
  SymMatrix sa = *SymMatrix::Create(a), sb = *SymMatrix::Create(b);
  EXPECT_TRUE((sa + sb).IsExactlySymmetric());
  EXPECT_TRUE((sa - sb).IsExactlySymmetric());
  EXPECT_TRUE((0.3 * sa).IsExactlySymmetric());
}

TEST(SymMatrixTest, MinEigenvalue) {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 1, 0;
  auto ev = SymMatrix::Create(m)->MinEigenvalue();
  ASSERT_TRUE(ev.ok());
  EXPECT_NEAR(*ev, -1.0, 1e-14);
  EXPECT_NEAR(*SymMatrix::Identity(4).MinEigenvalue(), 1.0, 1e-14);
}

}  // namespace
}  // namespace dpcov
