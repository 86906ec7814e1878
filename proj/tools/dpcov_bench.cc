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

// dpcov_bench: experiment runner and small utilities.
//
//   dpcov_bench run       [--config FILE] [--setting ...] [--out-dir DIR] ...
//   dpcov_bench generate  --p 100 --sr 0.2 --seed 7 --out model
//   dpcov_bench estimate  --data samples.csv --epsilon 1 --delta 1e-3 ...
//
// Exit codes: 0 success, 1 configuration or I/O error, 2 some trials failed.

#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "absl/strings/string_view.h"
#include "dpcov/config_file.h"
#include "dpcov/datagen.h"
#include "dpcov/estimator.h"
#include "dpcov/experiment.h"
#include "dpcov/ldp.h"
#include "dpcov/matrix_io.h"
#include "dpcov/results_writer.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitPartialFailure = 2;

constexpr const char* kOutDirEnv = "DPCOV_OUT_DIR";

// Flags that map one-to-one onto configuration keys.
constexpr const char* kConfigFlags[] = {
    "setting",      "algorithm",       "p",
    "sr",           "epsilon",         "delta",
    "n-grid",       "trials",          "gamma",
    "master-seed",  "diagonal-policy", "clip-norm",  // flag, see main()
    "lambda",       "c",               "offdiag-min",
    "offdiag-max",  "sensitivity-multiplier",
    "sigma-override", "threshold-override", "workers",
};

std::string DefaultOutDir() {
  const char* env = std::getenv(kOutDirEnv);
  return env != nullptr && *env != '\0' ? env : "dpcov_results";
}

int Fail(const absl::Status& status, int code = kExitConfigError) {
  std::cerr << "error: " << status.message() << "\n";
  return code;
}

struct RunArgs {
  std::string config_path;
  std::map<std::string, std::string> flag_values;
  std::string out_dir = DefaultOutDir();
  bool no_svg = false;
  bool quiet = false;
};

int Run(const RunArgs& args) {
  dpcov::ConfigEntries file_entries;
  if (!args.config_path.empty()) {
    absl::StatusOr<dpcov::ConfigEntries> parsed =
        dpcov::ReadFlatConfigFile(args.config_path);
    if (!parsed.ok()) return Fail(parsed.status());
    file_entries = *std::move(parsed);
  }
  dpcov::ConfigEntries overrides;
  for (const char* flag : kConfigFlags) {
    auto it = args.flag_values.find(flag);
    if (it != args.flag_values.end()) overrides.emplace_back(flag, it->second);
  }
  absl::StatusOr<dpcov::ExperimentConfig> cfg =
      dpcov::ResolveExperimentConfig(file_entries, overrides);
  if (!cfg.ok()) return Fail(cfg.status());
  if (absl::Status s = cfg->Validate(); !s.ok()) return Fail(s);

  if (!args.quiet) {
    std::cerr << "running " << dpcov::SettingName(cfg->setting) << " with "
              << dpcov::AlgorithmName(cfg->algorithm) << ": "
              << dpcov::ExpandGrid(*cfg).size() << " grid points x "
              << cfg->trials << " trials\n";
  }
  absl::StatusOr<dpcov::ExperimentResult> result = dpcov::RunExperiment(*cfg);
  if (!result.ok()) return Fail(result.status());

  dpcov::EmitOptions options;
  options.svg = !args.no_svg;
  absl::StatusOr<std::vector<std::string>> written =
      dpcov::EmitResults(*result, args.out_dir, options);
  if (!written.ok()) return Fail(written.status());

  if (!args.quiet) {
    for (const dpcov::SummaryRow& row : result->summary) {
      std::cout << row.series << " n=" << row.point.n
                << " mean_l2=" << dpcov::FormatDouble(row.mean_l2)
                << " mean_l1=" << dpcov::FormatDouble(row.mean_l1)
                << " ok=" << row.trials_ok << " failed=" << row.failed << "\n";
    }
    std::cerr << "wrote " << written->size() << " files to " << args.out_dir
              << "\n";
  }
  for (const std::string& v : result->invariant_violations) {
    std::cerr << "invariant violation: " << v << "\n";
  }
  if (result->failed_trials > 0) {
    std::cerr << result->failed_trials << " trial(s) failed; see trials.csv\n";
    return kExitPartialFailure;
  }
  return kExitOk;
}

struct GenerateArgs {
  int p = 100;
  double sr = 0.2;
  uint64_t seed = 1;
  double lambda = dpcov::kDefaultLambda;
  double c = dpcov::kDefaultScaleDivisor;
  dpcov::BaseEntryRange range;
  std::string out = "model";
};

int Generate(const GenerateArgs& args) {
  dpcov::Rng rng(args.seed);
  absl::StatusOr<dpcov::SymMatrix> base =
      dpcov::GenerateSparseBase(args.p, args.sr, rng, args.range);
  if (!base.ok()) return Fail(base.status());
  absl::StatusOr<dpcov::GroundTruthModel> model =
      dpcov::BuildCovariance(*base, args.lambda, args.c);
  if (!model.ok()) return Fail(model.status());
  if (absl::Status s = dpcov::WriteModel(*model, args.sr, args.seed, args.out);
      !s.ok()) {
    return Fail(s);
  }
  std::cerr << "wrote " << args.out << ".csv and " << args.out
            << ".meta.json (min eigenvalue "
            << dpcov::FormatDouble(model->min_eigenvalue) << ")\n";
  return kExitOk;
}

struct EstimateArgs {
  std::string data_path;
  std::string algorithm = "central";
  double epsilon = 1.0;
  double delta = 1e-3;
  double gamma = 0.5;
  std::string diagonal_policy = "threshold-all";
  uint64_t seed = 1;
  bool enforce_norm = false;
  std::string out = "estimate.csv";
};

int Estimate(const EstimateArgs& args) {
  absl::StatusOr<Eigen::MatrixXd> rows = dpcov::ReadMatrixCsv(args.data_path);
  if (!rows.ok()) return Fail(rows.status());
  absl::StatusOr<dpcov::SampleSet> data = dpcov::SampleSet::Create(
      *std::move(rows), args.enforce_norm ? dpcov::NormPolicy::kEnforce
                                          : dpcov::NormPolicy::kRecord);
  if (!data.ok()) return Fail(data.status());
  if (!data->within_unit_ball()) {
    std::cerr << "warning: " << data->rows_exceeding_unit_norm()
              << " row(s) have l2 norm > 1\n";
  }
  absl::StatusOr<dpcov::PrivacyBudget> budget =
      dpcov::PrivacyBudget::Create(args.epsilon, args.delta);
  if (!budget.ok()) return Fail(budget.status());
  if (budget->exceeds_unit_epsilon()) {
    std::cerr << "warning: epsilon > 1 is outside the calibrated range\n";
  }
  absl::StatusOr<dpcov::Algorithm> algorithm =
      dpcov::ParseAlgorithm(args.algorithm);
  if (!algorithm.ok()) return Fail(algorithm.status());
  absl::StatusOr<dpcov::DiagonalPolicy> policy =
      dpcov::ParseDiagonalPolicy(args.diagonal_policy);
  if (!policy.ok()) return Fail(policy.status());

  dpcov::EstimatorConfig ec;
  ec.gamma = args.gamma;
  ec.diagonal_policy = *policy;
  dpcov::Rng rng(args.seed);
  absl::StatusOr<dpcov::SymMatrix> estimate;
  switch (*algorithm) {
    case dpcov::Algorithm::kCentral:
      estimate = dpcov::DpThresholding(*data, *budget, ec, rng);
      break;
    case dpcov::Algorithm::kLocal:
      ec.mode = dpcov::ThresholdMode::kLocal;
      estimate = dpcov::LdpThresholding(*data, *budget, ec, rng);
      break;
    case dpcov::Algorithm::kNaive:
      estimate = dpcov::NaiveDpEstimate(*data, *budget, rng, ec);
      break;
  }
  if (!estimate.ok()) return Fail(estimate.status());
  if (absl::Status s = dpcov::WriteMatrixCsv(args.out, estimate->matrix());
      !s.ok()) {
    return Fail(s);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private sparse covariance estimation benchmark"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run a Monte Carlo experiment");
  run->add_option("--config", run_args.config_path,
                  "Flat key = value configuration file");
  for (const char* flag : kConfigFlags) {
    if (std::string(flag) == "clip-norm") {
      run->add_flag_callback(
          "--clip-norm",
          [&run_args] { run_args.flag_values["clip-norm"] = "true"; },
          "Project samples onto the unit l2 ball before estimation");
      continue;
    }
    run->add_option_function<std::string>(
        absl::StrCat("--", flag),
        [&run_args, flag](const std::string& v) {
          run_args.flag_values[flag] = v;
        },
        absl::StrCat("Overrides the '", flag, "' configuration key"));
  }
  run->add_option("--out-dir", run_args.out_dir,
                  absl::StrCat("Output directory (default $", kOutDirEnv,
                               " or ./dpcov_results)"));
  run->add_flag("--no-svg", run_args.no_svg, "Skip the SVG figures");
  run->add_flag("--quiet", run_args.quiet, "Only report errors");

  GenerateArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "generate", "Write a synthetic covariance model and its metadata");
  gen->add_option("--p", gen_args.p, "Dimension");
  gen->add_option("--sr", gen_args.sr, "Sparsity ratio of the base matrix");
  gen->add_option("--seed", gen_args.seed, "Random seed");
  gen->add_option("--lambda", gen_args.lambda, "Diagonal shift");
  gen->add_option("--c", gen_args.c, "Scale divisor");
  gen->add_option("--offdiag-min", gen_args.range.min_magnitude,
                  "Smallest off-diagonal magnitude of the base");
  gen->add_option("--offdiag-max", gen_args.range.max_magnitude,
                  "Largest off-diagonal magnitude of the base");
  gen->add_option("--out", gen_args.out, "Output path stem");

  EstimateArgs est_args;
  CLI::App* est = app.add_subcommand(
      "estimate", "Estimate a covariance from a CSV of samples (rows)");
  est->add_option("--data", est_args.data_path, "n x p sample CSV")
      ->required();
  est->add_option("--algorithm", est_args.algorithm, "central, local or naive");
  est->add_option("--epsilon", est_args.epsilon, "Privacy epsilon");
  est->add_option("--delta", est_args.delta, "Privacy delta");
  est->add_option("--gamma", est_args.gamma, "Sampling-term constant");
  est->add_option("--diagonal-policy", est_args.diagonal_policy,
                  "threshold-all or exempt-diagonal");
  est->add_option("--seed", est_args.seed, "Random seed");
  est->add_flag("--enforce-norm", est_args.enforce_norm,
                "Reject rows with l2 norm above 1");
  est->add_option("--out", est_args.out, "Output CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (run->parsed()) return Run(run_args);
  if (gen->parsed()) return Generate(gen_args);
  return Estimate(est_args);
}
