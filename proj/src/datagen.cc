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

#include "dpcov/datagen.h"

#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "absl/strings/str_cat.h"
#include "dpcov/estimator.h"
#include "dpcov/matrix_io.h"
#include "dpcov/status_macros.h"

namespace dpcov {

int64_t NonzeroPairCount(int p, double sr) {
  const double pp = static_cast<double>(p) * static_cast<double>(p);
  // The slack keeps e.g. 0.3 * 100 * 100 from rounding to 2999.999...
  return static_cast<int64_t>(std::floor(sr * pp / 2.0 + 1e-9));
}

absl::StatusOr<SymMatrix> GenerateSparseBase(int p, double sr, Rng& rng,
                                             const BaseEntryRange& range) {
  if (p < 1) {
    return absl::InvalidArgumentError(absl::StrCat("p must be >= 1, got ", p));
  }
  if (!(sr >= 0 && sr <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sparsity ratio must lie in [0, 1], got ", sr));
  }
  if (!(range.min_magnitude >= 0) ||
      !(range.max_magnitude >= range.min_magnitude) ||
      !std::isfinite(range.max_magnitude)) {
    return absl::InvalidArgumentError("invalid base entry magnitude range");
  }
  const int64_t pairs = NonzeroPairCount(p, sr);
  const int64_t slots = static_cast<int64_t>(p) * (p - 1) / 2;
  if (pairs > slots) {
    return absl::OutOfRangeError(absl::StrCat(
        "sparsity ratio ", sr, " needs ", 2 * pairs,
        " off-diagonal nonzeros but a ", p, "x", p, " matrix has only ",
        2 * slots));
  }

  // Partial Fisher-Yates over the strictly-upper slots, row-major.
  std::vector<int64_t> slot_ids(slots);
  std::iota(slot_ids.begin(), slot_ids.end(), int64_t{0});
  for (int64_t k = 0; k < pairs; ++k) {
    std::uniform_int_distribution<int64_t> pick(k, slots - 1);
    std::swap(slot_ids[k], slot_ids[pick(rng.engine())]);
  }

  std::vector<std::pair<int, int>> position(slots);
  for (int i = 0, s = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) position[s++] = {i, j};
  }

  std::uniform_real_distribution<double> magnitude(range.min_magnitude,
                                                   range.max_magnitude);
  std::bernoulli_distribution negative(0.5);
  Eigen::MatrixXd base = Eigen::MatrixXd::Zero(p, p);
  for (int64_t k = 0; k < pairs; ++k) {
    const auto [i, j] = position[slot_ids[k]];
    double v = magnitude(rng.engine());
    if (negative(rng.engine())) v = -v;
    base(i, j) = v;
    base(j, i) = v;
  }
  return SymMatrix::FromUpper(base);
}

absl::StatusOr<GroundTruthModel> BuildCovariance(const SymMatrix& base,
                                                 double lambda, double c) {
  if (!(lambda > 0) || !(c > 0) || !std::isfinite(lambda) ||
      !std::isfinite(c)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "lambda and c must be positive, got lambda=", lambda, " c=", c));
  }
  const int p = base.dim();
  Eigen::MatrixXd shifted = base.matrix();
  shifted.diagonal().array() += lambda;
  const SymMatrix covariance = SymMatrix::FromUpper(shifted / c);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(covariance.matrix());
  if (solver.info() != Eigen::Success) {
    return absl::InternalError(
        "numeric failure: eigensolver did not converge on the covariance");
  }
  const double min_eig = solver.eigenvalues()(0);
  if (min_eig < kPsdFloor) {
    return absl::FailedPreconditionError(absl::StrCat(
        "shifted covariance is not PSD: min eigenvalue ", min_eig,
        " with lambda=", lambda, "; increase lambda"));
  }

  int64_t nonzeros = 0;
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < p; ++i) {
      if (i != j && base(i, j) != 0.0) ++nonzeros;
    }
  }

  GroundTruthModel model;
  model.p = p;
  model.sr = static_cast<double>(nonzeros) / (static_cast<double>(p) * p);
  model.lambda = lambda;
  model.c = c;
  model.covariance = covariance;
  model.min_eigenvalue = min_eig;
  const Eigen::MatrixXd& v = solver.eigenvectors();
  model.sqrt_factor = SymMatrix::Symmetrize(
                          v * solver.eigenvalues().cwiseMax(0.0).cwiseSqrt()
                                  .asDiagonal() *
                          v.transpose())
                          .matrix();
  return model;
}

absl::StatusOr<SampleSet> SampleGaussian(const GroundTruthModel& model,
                                         int64_t n, Rng& rng) {
  if (n < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("sample count must be >= 1, got ", n));
  }
  const int p = model.p;
  if (model.sqrt_factor.rows() != p || model.sqrt_factor.cols() != p) {
    return absl::FailedPreconditionError(
        "model has no square-root factor; build it with BuildCovariance");
  }
  const uint64_t base_seed = rng.NextU64();
  Eigen::MatrixXd z(n, p);
  for (int64_t i = 0; i < n; ++i) {
    Rng row_rng(DeriveSeed(base_seed, {static_cast<uint64_t>(i)}));
    for (int j = 0; j < p; ++j) z(i, j) = row_rng.Gaussian();
  }
  return SampleSet::Create(z * model.sqrt_factor, NormPolicy::kRecord);
}

absl::Status WriteModel(const GroundTruthModel& model, double requested_sr,
                        uint64_t seed, const std::string& stem) {
  DPCOV_RETURN_IF_ERROR(
      WriteMatrixCsv(stem + ".csv", model.covariance.matrix()));
  nlohmann::ordered_json meta;
  meta["p"] = model.p;
  meta["sr"] = requested_sr;
  meta["realized_sr"] = model.sr;
  meta["lambda"] = model.lambda;
  meta["c"] = model.c;
  meta["seed"] = seed;
  meta["min_eigenvalue"] = model.min_eigenvalue;
  const std::string path = stem + ".meta.json";
  std::ofstream out(path, std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot open ", path));
  out << meta.dump(2) << '\n';
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace dpcov
