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

// Flat key/value experiment configuration, a TOML-compatible subset:
//
//   # comment
//   setting = "sparsity-sweep"
//   n_grid = [250, 500, 1000]
//   trials = 20
//   clip_norm = false
//   delta = "1/n"            # or a number in (0, 1]
//
// No tables, no multi-line values. Keys may use '-' or '_'; they match the
// CLI flag names.

#ifndef DPCOV_CONFIG_FILE_H_
#define DPCOV_CONFIG_FILE_H_

#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "dpcov/experiment.h"

namespace dpcov {

using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

// Splits text into (key, raw value) pairs in file order. Keys are normalized
// to underscores; surrounding quotes are stripped from scalar values.
absl::StatusOr<ConfigEntries> ParseFlatConfig(absl::string_view text);

absl::StatusOr<ConfigEntries> ReadFlatConfigFile(const std::string& path);

// Applies one key to `cfg`. Unknown keys and malformed values are errors.
absl::Status SetConfigField(ExperimentConfig& cfg, absl::string_view key,
                            absl::string_view value);

// Starts from DefaultsFor(setting), where `setting` comes from the last
// "setting" key in `file` then `overrides`, and applies file entries followed
// by overrides.
absl::StatusOr<ExperimentConfig> ResolveExperimentConfig(
    const ConfigEntries& file, const ConfigEntries& overrides);

// Inverse of ParseFlatConfig + SetConfigField for every field.
std::string SerializeConfig(const ExperimentConfig& cfg);

}  // namespace dpcov

#endif  // DPCOV_CONFIG_FILE_H_
