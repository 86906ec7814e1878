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

// Plain-text matrix files: one line per row, comma-separated, full matrix,
// '.' as the decimal point regardless of the process locale. Doubles are
// written in shortest round-trip form, so Read(Write(m)) == m bit-exactly.

#ifndef DPCOV_MATRIX_IO_H_
#define DPCOV_MATRIX_IO_H_

#include <string>

#include <Eigen/Dense>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace dpcov {

// Shortest decimal string that parses back to exactly `value`.
std::string FormatDouble(double value);

// Locale-independent parse of a full decimal/scientific token.
absl::StatusOr<double> ParseDouble(absl::string_view token);

std::string MatrixToCsv(const Eigen::MatrixXd& m);
absl::StatusOr<Eigen::MatrixXd> MatrixFromCsv(absl::string_view text);

absl::Status WriteMatrixCsv(const std::string& path, const Eigen::MatrixXd& m);
absl::StatusOr<Eigen::MatrixXd> ReadMatrixCsv(const std::string& path);

}  // namespace dpcov

#endif  // DPCOV_MATRIX_IO_H_
