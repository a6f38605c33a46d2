//
// Copyright 2026 The SDC Toolkit Authors
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

#ifndef SDC_STATUS_MACROS_H_
#define SDC_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define SDC_STATUS_CONCAT_INNER_(x, y) x##y
#define SDC_STATUS_CONCAT_(x, y) SDC_STATUS_CONCAT_INNER_(x, y)

#define SDC_RETURN_IF_ERROR(expr)                \
  do {                                           \
    if (absl::Status _sdc_status = (expr);       \
        !_sdc_status.ok()) {                     \
      return _sdc_status;                        \
    }                                            \
  } while (0)

#define SDC_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                               \
  if (!statusor.ok()) return std::move(statusor).status(); \
  lhs = std::move(statusor).value()

// Evaluates `rexpr` (an absl::StatusOr<T>), returning its error status from
// the enclosing function on failure and otherwise assigning the value to `lhs`.
#define SDC_ASSIGN_OR_RETURN(lhs, rexpr) \
  SDC_ASSIGN_OR_RETURN_IMPL_(            \
      SDC_STATUS_CONCAT_(_sdc_statusor_, __LINE__), lhs, rexpr)

#endif  // SDC_STATUS_MACROS_H_
