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


#include "dpcov/rng.h"

#include <cstdint>
#include <set>

#include <gtest/gtest.h>

namespace dpcov {
namespace {

TEST(DeriveSeedTest, IsAPureFunction) {
  EXPECT_EQ(DeriveSeed(7, {1, 2}), DeriveSeed(7, {1, 2}));
}

TEST(DeriveSeedTest, IndexOrderMatters) {
  EXPECT_NE(DeriveSeed(7, {1, 2}), DeriveSeed(7, {2, 1}));
}

TEST(DeriveSeedTest, NoCollisionsOverSmallGrid) {
  std::set<uint64_t> seen;
  for (uint64_t g = 0; g < 50; ++g) {
    for (uint64_t t = 0; t < 50; ++t) seen.insert(DeriveSeed(42, {g, t}));
  }
  EXPECT_EQ(seen.size(), 2500u);
}

TEST(DeriveSeedTest, MasterSeedChangesEveryChild) {
  for (uint64_t i = 0; i < 20; ++i) {
    EXPECT_NE(DeriveSeed(1, {i}), DeriveSeed(2, {i}));
  }
}

TEST(RngTest, SameSeedSameStream) {
  Rng a(99), b(99);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.Gaussian(), b.Gaussian());
}

TEST(RngTest, ForkDoesNotAdvanceParent) {
  Rng a(5), b(5);
  Rng child = a.Fork(3);
  (void)child.NextU64();
  EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(RngTest, ForkedStreamsDiffer) {
  Rng a(5);
  Rng c0 = a.Fork(0), c1 = a.Fork(1);
  EXPECT_NE(c0.NextU64(), c1.NextU64());
  EXPECT_EQ(a.Fork(1).seed(), c1.seed());
}

}  // namespace
}  // namespace dpcov
