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


#include "dpcov/results_writer.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "absl/strings/str_split.h"

namespace dpcov {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;

std::string Slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> Lines(const std::string& text) {
  return absl::StrSplit(text, '\n', absl::SkipEmpty());
}

fs::path FreshDir(const std::string& name) {
  fs::path dir = fs::path(::testing::TempDir()) / name;
  fs::remove_all(dir);
  return dir;
}

// Builds a result without running anything: one record per (grid point,
// trial) with l2 error `base + trial`.
ExperimentResult Synthetic(const ExperimentConfig& cfg, double base) {
  ExperimentResult r;
  r.config = cfg;
  r.grid = ExpandGrid(cfg);
  for (const GridPoint& g : r.grid) {
    for (int t = 0; t < cfg.trials; ++t) {
      TrialRecord rec;
      rec.grid_index = g.index;
      rec.p = g.p;
      rec.sr = g.sr;
      rec.epsilon = g.epsilon;
      rec.delta = g.delta;
      rec.n = g.n;
      rec.trial = t;
      rec.rel_err_l1 = rec.rel_err_l2 = rec.rel_err_linf = base + t;
      r.trials.push_back(rec);
    }
  }
  r.summary = Summarize(cfg, r.grid, r.trials);
  return r;
}

TEST(EmitResultsTest, ZeroRecordsIsAnErrorAndWritesNothing) {
  ExperimentResult empty;
  empty.config = DefaultsFor(Setting::kCustom);
  const fs::path dir = FreshDir("empty");
  EXPECT_FALSE(EmitResults(empty, dir.string()).ok());
  EXPECT_FALSE(fs::exists(dir));
}

TEST(EmitResultsTest, ThreeRecordsOneRow) {
  ExperimentConfig cfg = DefaultsFor(Setting::kCustom);
  cfg.p = {10};
  cfg.n_grid = {100};
  cfg.trials = 3;
  ExperimentResult r = Synthetic(cfg, 0.5);
  const fs::path dir = FreshDir("three");
  auto files = EmitResults(r, dir.string());
  ASSERT_TRUE(files.ok()) << files.status();
  std::vector<std::string> summary = Lines(Slurp(dir / "summary.csv"));
  ASSERT_EQ(summary.size(), 2u);
  // Mean of 0.5, 1.5, 2.5.
  EXPECT_THAT(summary[1], HasSubstr(",1.5,1,"));
  EXPECT_EQ(Lines(Slurp(dir / "trials.csv")).size(), 4u);
  EXPECT_EQ(Lines(Slurp(dir / "timings.csv")).size(), 4u);
  EXPECT_TRUE(fs::exists(dir / "config.toml"));
  EXPECT_TRUE(fs::exists(dir / "figure_l2.svg"));
}

TEST(EmitResultsTest, TrialsHeaderIsStable) {
  ExperimentConfig cfg = DefaultsFor(Setting::kCustom);
  cfg.n_grid = {100};
  cfg.trials = 1;
  const std::string csv = TrialsCsv(Synthetic(cfg, 0.1));
  EXPECT_EQ(Lines(csv)[0],
            "algorithm,p,sr,epsilon,delta,n,trial,seed,rel_err_l1,rel_err_l2,"
            "rel_err_linf,min_eigenvalue,failed,frac_rows_norm_gt1,"
            "abs_err_l2_projected,abs_err_l2_thresholded,projection_bound_ok,"
            "norm_order_ok,error");
  EXPECT_THAT(csv, ::testing::Not(HasSubstr("wall")));
}

TEST(EmitResultsTest, DimensionSweepGivesFourSeriesFiles) {
  ExperimentConfig cfg = DefaultsFor(Setting::kDimensionSweep);
  cfg.trials = 2;
  const fs::path dir = FreshDir("dimension");
  ASSERT_TRUE(EmitResults(Synthetic(cfg, 0.2), dir.string()).ok());
  for (const char* norm : {"l1", "l2", "linf"}) {
    int count = 0;
    for (const auto& entry : fs::directory_iterator(dir / "series" / norm)) {
      (void)entry;
      ++count;
    }
    EXPECT_EQ(count, 4) << norm;
  }
  const std::vector<std::string> series =
      Lines(Slurp(dir / "series" / "l2" / "p=200.csv"));
  EXPECT_EQ(series[0], "n,series,mean_rel_err,std");
  EXPECT_EQ(series.size(), 1 + cfg.n_grid.size());
  EXPECT_THAT(series[1], ::testing::StartsWith("250,p=200,0.7,"));
}

TEST(EmitResultsTest, NoSvgOption) {
  ExperimentConfig cfg = DefaultsFor(Setting::kCustom);
  cfg.n_grid = {100};
  cfg.trials = 1;
  const fs::path dir = FreshDir("nosvg");
  ASSERT_TRUE(EmitResults(Synthetic(cfg, 0.1), dir.string(), {.svg = false}).ok());
  EXPECT_FALSE(fs::exists(dir / "figure_l2.svg"));
}

TEST(RenderSvgFigureTest, OneLinePerSeries) {
  ExperimentConfig cfg = DefaultsFor(Setting::kSparsitySweep);
  cfg.trials = 1;
  const std::string svg = RenderSvgFigure(Synthetic(cfg, 0.3), NormKind::kL2);
  EXPECT_THAT(svg, HasSubstr("<svg"));
  size_t lines = 0;
  for (size_t at = svg.find("<polyline"); at != std::string::npos;
       at = svg.find("<polyline", at + 1)) {
    ++lines;
  }
  EXPECT_EQ(lines, 4u);
  EXPECT_THAT(svg, HasSubstr("sr=0.5"));
}

}  // namespace
}  // namespace dpcov
