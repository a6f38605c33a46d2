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

#include "sdc/emd.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace sdc {
namespace {

constexpr double kNormalizationTolerance = 1e-9;

absl::Status CheckDistributions(absl::Span<const double> p,
                                absl::Span<const double> q) {
  if (p.size() != q.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "distribution lengths differ: ", p.size(), " vs ", q.size()));
  }
  if (p.size() < 2) {
    return absl::InvalidArgumentError("EMD needs a support of at least 2 values");
  }
  for (absl::Span<const double> d : {p, q}) {
    double sum = 0;
    for (double x : d) {
      if (!(x >= 0) || !std::isfinite(x)) {
        return absl::InvalidArgumentError("probabilities must be finite and >= 0");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > kNormalizationTolerance) {
      return absl::InvalidArgumentError(
          absl::StrCat("distribution sums to ", sum, ", not 1"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<double> EmdOrdered(absl::Span<const double> p,
                                  absl::Span<const double> q) {
  if (absl::Status s = CheckDistributions(p, q); !s.ok()) return s;
  double cumulative = 0;
  double total = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    cumulative += p[i] - q[i];
    total += std::abs(cumulative);
  }
  return total / static_cast<double>(p.size() - 1);
}

absl::StatusOr<double> EmdCategorical(absl::Span<const double> p,
                                      absl::Span<const double> q) {
  if (absl::Status s = CheckDistributions(p, q); !s.ok()) return s;
  double total = 0;
  for (size_t i = 0; i < p.size(); ++i) total += std::abs(p[i] - q[i]);
  return 0.5 * total;
}

}  // namespace sdc
