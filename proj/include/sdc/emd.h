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

#ifndef SDC_EMD_H_
#define SDC_EMD_H_

#include "absl/status/statusor.h"
#include "absl/types/span.h"

namespace sdc {

// Earth mover's distance between two distributions over the same ordered
// support of m >= 2 values, with ground distance |i - j| / (m - 1):
//
//   EMD = 1/(m-1) * sum_i |sum_{j<=i} (p_j - q_j)|
//
// Both inputs must have equal length and sum to 1 within 1e-9.
absl::StatusOr<double> EmdOrdered(absl::Span<const double> p,
                                  absl::Span<const double> q);

// EMD under the equal ground distance, i.e. total variation:
// 1/2 * sum_i |p_i - q_i|.
absl::StatusOr<double> EmdCategorical(absl::Span<const double> p,
                                      absl::Span<const double> q);

}  // namespace sdc

#endif  // SDC_EMD_H_
