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

#include <cmath>
#include <random>
#include <vector>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "testing/oracles.h"

namespace dpcov {
namespace {

PrivacyBudget Budget(double eps, double delta) {
  return *PrivacyBudget::Create(eps, delta);
}

SampleSet RandomSamples(int n, int p, uint64_t seed) {
  std::mt19937_64 gen(seed);
  return *SampleSet::Create(testing::RandomMatrix(n, p, gen) * 0.4);
}

EstimatorConfig LocalConfig() {
  EstimatorConfig cfg;
  cfg.mode = ThresholdMode::kLocal;
  return cfg;
}

TEST(PerturbRecordTest, NoNoiseIsOuterProduct) {
  Rng rng(1);
  auto r = PerturbRecord(Eigen::Vector2d(1, 0), NoiseScale::Zero(), rng);
  ASSERT_TRUE(r.ok());
  Eigen::MatrixXd want(2, 2);
  want << 1, 0, 0, 0;
  EXPECT_EQ(r->matrix().matrix(), want);
}

TEST(PerturbRecordTest, DifferenceIsStandaloneNoise) {
  const Eigen::Vector3d x(0.2, -0.5, 0.1);
  const NoiseScale s = *NoiseScale::Create(0.7);
  Rng a(4), b(4);
  auto r = PerturbRecord(x, s, a);
  SymMatrix noise = SampleSymmetricNoise(3, s, b);
  EXPECT_LE(testing::MaxAbsDiff(r->matrix().matrix() - x * x.transpose(),
                                noise.matrix()),
            1e-15);
}

TEST(PerturbRecordTest, ZeroVectorGivesPureNoise) {
  const NoiseScale s = *NoiseScale::Create(1.0);
  Rng a(6), b(6);
  auto r = PerturbRecord(Eigen::Vector3d::Zero(), s, a);
  EXPECT_EQ(r->matrix(), SampleSymmetricNoise(3, s, b));
}

TEST(PerturbRecordTest, EnforcedNormBound) {
  Rng rng(1);
  EXPECT_FALSE(PerturbRecord(Eigen::Vector2d(1, 1), NoiseScale::Zero(), rng,
                             NormPolicy::kEnforce)
                   .ok());
  EXPECT_TRUE(PerturbRecord(Eigen::Vector2d(1, 1), NoiseScale::Zero(), rng,
                            NormPolicy::kRecord)
                  .ok());
}

TEST(AggregateTest, SingleRecord) {
  std::mt19937_64 gen(1);
  NoisyRecord r(*SymMatrix::Create(testing::RandomSymmetric(3, gen)));
  std::vector<NoisyRecord> rs = {r};
  EXPECT_EQ(*Aggregate(rs), r.matrix());
}

TEST(AggregateTest, Cancellation) {
  std::mt19937_64 gen(2);
  SymMatrix m = *SymMatrix::Create(testing::RandomSymmetric(4, gen));
  std::vector<NoisyRecord> rs = {NoisyRecord(m), NoisyRecord(-1.0 * m)};
  EXPECT_EQ(*Aggregate(rs), SymMatrix::Zero(4));
}

TEST(AggregateTest, MatchesMeanOracle) {
  std::mt19937_64 gen(3);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<NoisyRecord> rs;
    std::vector<Eigen::MatrixXd> raw;
    for (int k = 0; k < 7; ++k) {
      raw.push_back(testing::RandomSymmetric(5, gen));
      rs.emplace_back(*SymMatrix::Create(raw.back()));
    }
    EXPECT_LE(testing::MaxAbsDiff(Aggregate(rs)->matrix(),
                                  testing::EntrywiseMean(raw)),
              1e-12);
  }
}

TEST(AggregateTest, Errors) {
  EXPECT_FALSE(Aggregate({}).ok());
  std::vector<NoisyRecord> rs = {NoisyRecord(SymMatrix::Zero(2)),
                                 NoisyRecord(SymMatrix::Zero(3))};
  EXPECT_FALSE(Aggregate(rs).ok());
  RecordAggregator empty(2);
  EXPECT_EQ(empty.Mean().status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(LdpThresholdingTest, NoiselessMatchesCentralPrefix) {
  EstimatorConfig cfg = LocalConfig();
  cfg.sigma_override = 0.0;
  cfg.threshold_override = 0.0;
  SampleSet data = RandomSamples(25, 4, 1);
  Rng rng(1);
  auto stages = LdpThresholdingStages(data, Budget(1, 0.04), cfg, rng);
  ASSERT_TRUE(stages.ok());
  EXPECT_FALSE(stages->empirical.has_value());
  const Eigen::MatrixXd emp = testing::TripleLoopCovariance(data.rows());
  EXPECT_LE(testing::MaxAbsDiff(stages->perturbed.matrix(), emp), 1e-15);
  EXPECT_LE(testing::MaxAbsDiff(stages->projected.matrix(), emp), 1e-10);

  EstimatorConfig central = cfg;
  central.mode = ThresholdMode::kCentral;
  Rng crng(1);
  auto cst = DpThresholdingStages(data, Budget(1, 0.04), central, crng);
  EXPECT_LE(testing::MaxAbsDiff(stages->perturbed.matrix(),
                                cst->perturbed.matrix()),
            1e-15);
}

TEST(LdpThresholdingTest, SingleRecordHugeThresholdIsZero) {
  EstimatorConfig cfg = LocalConfig();
  cfg.sigma_override = 0.0;
  cfg.threshold_override = 1e9;
  Rng rng(1);
  auto out = LdpThresholding(RandomSamples(1, 3, 2), Budget(1, 0.5), cfg, rng);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(*out, SymMatrix::Zero(3));
}

TEST(LdpThresholdingTest, EqualsStagedComposition) {
  SampleSet data = RandomSamples(30, 4, 3);
  const PrivacyBudget b = Budget(1, 1.0 / 30);
  const EstimatorConfig cfg = LocalConfig();
  Rng rng(17);
  auto stages = LdpThresholdingStages(data, b, cfg, rng);
  ASSERT_TRUE(stages.ok());

  Rng replay(17);
  const uint64_t base = replay.NextU64();
  const NoiseScale s = *LocalNoiseScale(b);
  std::vector<NoisyRecord> records;
  for (int64_t i = 0; i < data.n(); ++i) {
    Rng player(PlayerSeed(base, i));
    records.push_back(*PerturbRecord(data.row(i), s, player));
  }
  SymMatrix agg = *Aggregate(records);
  EXPECT_EQ(stages->perturbed, agg);
  const double t = *ThresholdValue(4, 30, b, cfg);
  EXPECT_EQ(stages->threshold, t);
  SymMatrix thr = HardThreshold(agg, t, cfg.diagonal_policy);
  EXPECT_EQ(stages->thresholded, thr);
  EXPECT_EQ(stages->projected, *PsdProject(thr));
}

TEST(LdpThresholdingTest, PlayerOrderDoesNotMatter) {
  // Producing records in reverse and adding in index order gives the same
  // mean as the pipeline.
  SampleSet data = RandomSamples(12, 3, 4);
  const PrivacyBudget b = Budget(1, 0.1);
  Rng rng(5);
  auto stages = LdpThresholdingStages(data, b, LocalConfig(), rng);
  Rng replay(5);
  const uint64_t base = replay.NextU64();
  const NoiseScale s = *LocalNoiseScale(b);
  std::vector<std::optional<NoisyRecord>> slots(12);
  for (int64_t i = 11; i >= 0; --i) {
    Rng player(PlayerSeed(base, i));
    slots[i] = *PerturbRecord(data.row(i), s, player);
  }
  RecordAggregator server(3);
  for (const auto& r : slots) ASSERT_TRUE(server.Add(*r).ok());
  EXPECT_EQ(*server.Mean(), stages->perturbed);
}

TEST(LdpThresholdingTest, AggregatedNoiseStdShrinksAsSqrtN) {
  // n = 1000 zero rows, p = 2, sigma = 1: the off-diagonal entry of the mean
  // is N(0, 1/n).
  SampleSet data = *SampleSet::Create(Eigen::MatrixXd::Zero(1000, 2));
  EstimatorConfig cfg = LocalConfig();
  cfg.sigma_override = 1.0;
  cfg.threshold_override = 0.0;
  Rng rng(2019);
  std::vector<double> xs;
  for (int rep = 0; rep < 200; ++rep) {
    auto st = LdpThresholdingStages(data, Budget(1, 0.001), cfg, rng);
    ASSERT_TRUE(st.ok());
    xs.push_back(st->perturbed(0, 1));
  }
  const double sd = std::sqrt(testing::SampleVariance(xs));
  EXPECT_NEAR(sd, 1 / std::sqrt(1000.0), 0.1 / std::sqrt(1000.0));
}

TEST(LdpThresholdingTest, OutputSymmetricPsdAndRejectsCentralMode) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    auto out = LdpThresholding(RandomSamples(40, 6, seed), Budget(1, 0.025),
                               LocalConfig(), rng);
    ASSERT_TRUE(out.ok());
    EXPECT_TRUE(out->IsExactlySymmetric());
    EXPECT_GE(*out->MinEigenvalue(), kPsdFloor);
  }
  Rng rng(1);
  EXPECT_FALSE(
      LdpThresholding(RandomSamples(5, 2, 1), Budget(1, 0.1), {}, rng).ok());
}

}  // namespace
}  // namespace dpcov
