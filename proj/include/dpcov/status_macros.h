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

#ifndef DPCOV_STATUS_MACROS_H_
#define DPCOV_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define DPCOV_STATUS_CONCAT_INNER(a, b) a##b
#define DPCOV_STATUS_CONCAT(a, b) DPCOV_STATUS_CONCAT_INNER(a, b)

#define DPCOV_RETURN_IF_ERROR(expr)            \
  do {                                         \
    const absl::Status _dpcov_status = (expr); \
    if (!_dpcov_status.ok()) {                 \
      return _dpcov_status;                    \
    }                                          \
  } while (0)

#define DPCOV_ASSIGN_OR_RETURN_IMPL(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                \
  if (!statusor.ok()) {                                   \
    return statusor.status();                             \
  }                                                       \
  lhs = std::move(statusor).value()

// Evaluates `rexpr` (an absl::StatusOr<T>), returns its status on error,
// otherwise moves the value into `lhs`.
#define DPCOV_ASSIGN_OR_RETURN(lhs, rexpr) \
  DPCOV_ASSIGN_OR_RETURN_IMPL(             \
      DPCOV_STATUS_CONCAT(_dpcov_statusor_, __LINE__), lhs, rexpr)

#endif  // DPCOV_STATUS_MACROS_H_
