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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "sdc/anonymize.h"
#include "sdc/distance.h"
#include "sdc/qi_space.h"
#include "sdc/status_macros.h"

namespace sdc {
namespace {

absl::StatusOr<size_t> ConfidentialIndex(const Schema& schema,
                                         const std::string& name) {
  std::optional<size_t> attr = schema.IndexOf(name);
  if (!attr.has_value()) {
    return absl::NotFoundError(absl::StrCat("unknown attribute '", name, "'"));
  }
  if (schema.attribute(*attr).role != AttributeRole::kConfidential) {
    return absl::InvalidArgumentError(
        absl::StrCat("attribute '", name, "' is not confidential"));
  }
  return *attr;
}

std::vector<CellValue> QiCells(const Dataset& ds, size_t i) {
  std::vector<CellValue> cells;
  for (size_t a : ds.schema().quasi_identifiers()) {
    cells.push_back(ds.cell(i, a));
  }
  return cells;
}

// Index of the cell list in `candidates` nearest to `from`, skipping `skip`.
// Ties go to the lowest index.
absl::StatusOr<size_t> NearestCells(
    const std::vector<CellValue>& from,
    const std::vector<std::vector<CellValue>>& candidates, const Schema& schema,
    std::optional<size_t> skip) {
  size_t best = candidates.size();
  double best_d = 0;
  for (size_t j = 0; j < candidates.size(); ++j) {
    if (skip.has_value() && j == *skip) continue;
    SDC_ASSIGN_OR_RETURN(double d, QiCellsDistance(from, candidates[j], schema));
    if (best == candidates.size() || d < best_d) {
      best = j;
      best_d = d;
    }
  }
  return best;
}

}  // namespace

absl::StatusOr<Clustering> TCloseInitialClusters(const Dataset& ds, int k,
                                                 size_t confidential_attr) {
  if (k < 1) return absl::InvalidArgumentError("k must be >= 1");
  const size_t n = ds.size();
  if (static_cast<size_t>(k) > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "k = ", k, " exceeds the number of records (", n, ")"));
  }
  SDC_ASSIGN_OR_RETURN(QiSpace space, QiSpace::Build(ds));
  SDC_ASSIGN_OR_RETURN(
      ConfidentialDistribution dist,
      ConfidentialDistribution::Create(ds, confidential_attr));

  // Sort on the confidential value: numeric order, or categorical by
  // descending frequency then lexicographically (support codes are sorted).
  const std::vector<size_t>& code = dist.codes();
  std::vector<size_t> counts(dist.support_size(), 0);
  for (size_t c : code) ++counts[c];
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  if (dist.ordered()) {
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return code[a] < code[b];
    });
  } else {
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      if (counts[code[a]] != counts[code[b]]) {
        return counts[code[a]] > counts[code[b]];
      }
      return code[a] < code[b];
    });
  }

  // k contiguous slices whose sizes differ by at most one.
  const size_t slices = static_cast<size_t>(k);
  std::vector<std::vector<size_t>> free(slices);
  {
    const size_t base = n / slices;
    const size_t extra = n % slices;
    size_t pos = 0;
    for (size_t s = 0; s < slices; ++s) {
      const size_t len = base + (s < extra ? 1 : 0);
      free[s].assign(order.begin() + pos, order.begin() + pos + len);
      std::sort(free[s].begin(), free[s].end());
      pos += len;
    }
  }

  Clustering out;
  out.k = k;
  std::vector<double> dist_buf;
  while (std::none_of(free.begin(), free.end(),
                      [](const auto& f) { return f.empty(); })) {
    size_t seed_slice = 0;
    for (size_t s = 1; s < slices; ++s) {
      if (free[s].front() < free[seed_slice].front()) seed_slice = s;
    }
    const size_t seed = free[seed_slice].front();
    free[seed_slice].erase(free[seed_slice].begin());
    std::vector<size_t> cluster = {seed};
    for (size_t s = 0; s < slices; ++s) {
      if (s == seed_slice) continue;
      dist_buf.resize(free[s].size());
      space.DistancesFrom(seed, free[s], absl::MakeSpan(dist_buf));
      size_t best = 0;
      for (size_t p = 1; p < free[s].size(); ++p) {
        if (dist_buf[p] < dist_buf[best]) best = p;
      }
      cluster.push_back(free[s][best]);
      free[s].erase(free[s].begin() + best);
    }
    std::sort(cluster.begin(), cluster.end());
    out.clusters.push_back(std::move(cluster));
  }

  std::vector<size_t> leftovers;
  for (const auto& f : free) leftovers.insert(leftovers.end(), f.begin(), f.end());
  std::sort(leftovers.begin(), leftovers.end());
  if (!leftovers.empty()) {
    std::vector<std::vector<CellValue>> generalized;
    for (const auto& c : out.clusters) {
      SDC_ASSIGN_OR_RETURN(std::vector<CellValue> g, GeneralizeCluster(ds, c));
      generalized.push_back(std::move(g));
    }
    for (size_t i : leftovers) {
      SDC_ASSIGN_OR_RETURN(
          size_t target,
          NearestCells(QiCells(ds, i), generalized, ds.schema(), std::nullopt));
      out.clusters[target].push_back(i);
    }
    for (auto& c : out.clusters) std::sort(c.begin(), c.end());
  }
  return out;
}

absl::StatusOr<Dataset> TCloseAnonymize(const Dataset& ds, int k, double t,
                                        const std::string& confidential) {
  if (!(t >= 0 && t <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("t = ", t, " is outside [0, 1]"));
  }
  SDC_ASSIGN_OR_RETURN(size_t attr, ConfidentialIndex(ds.schema(), confidential));
  SDC_ASSIGN_OR_RETURN(Clustering clustering,
                       TCloseInitialClusters(ds, k, attr));
  SDC_ASSIGN_OR_RETURN(ConfidentialDistribution dist,
                       ConfidentialDistribution::Create(ds, attr));

  std::vector<std::vector<size_t>>& clusters = clustering.clusters;
  std::vector<std::vector<CellValue>> generalized;
  std::vector<double> emd;
  for (const auto& c : clusters) {
    SDC_ASSIGN_OR_RETURN(std::vector<CellValue> g, GeneralizeCluster(ds, c));
    generalized.push_back(std::move(g));
    emd.push_back(dist.EmdOf(c));
  }
  // Each merge removes one cluster; a single cluster has EMD 0.
  while (true) {
    auto violating = std::find_if(emd.begin(), emd.end(),
                                  [t](double e) { return e > t; });
    if (violating == emd.end()) break;
    const size_t i = static_cast<size_t>(violating - emd.begin());
    SDC_ASSIGN_OR_RETURN(
        size_t j, NearestCells(generalized[i], generalized, ds.schema(), i));
    if (j == clusters.size()) {
      return absl::InternalError("single cluster violates t");
    }
    const size_t keep = std::min(i, j);
    const size_t drop = std::max(i, j);
    std::vector<size_t> merged = clusters[keep];
    merged.insert(merged.end(), clusters[drop].begin(), clusters[drop].end());
    std::sort(merged.begin(), merged.end());
    clusters[keep] = std::move(merged);
    clusters.erase(clusters.begin() + drop);
    generalized.erase(generalized.begin() + drop);
    emd.erase(emd.begin() + drop);
    SDC_ASSIGN_OR_RETURN(generalized[keep],
                         GeneralizeCluster(ds, clusters[keep]));
    emd[keep] = dist.EmdOf(clusters[keep]);
  }

  Provenance provenance;
  provenance.mechanism = Mechanism::kTClose;
  provenance.k = k;
  provenance.t = t;
  return ReleaseClusters(ds, clustering, provenance);
}

}  // namespace sdc
