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

#ifndef SDC_ANONYMIZE_H_
#define SDC_ANONYMIZE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "sdc/cell_value.h"
#include "sdc/dataset.h"
#include "sdc/qi_space.h"

namespace sdc {

// Partition of record indices into groups; each group is sorted ascending.
struct Clustering {
  std::vector<std::vector<size_t>> clusters;
  int k = 1;
};

// Naive baseline: each numeric/date quasi-identifier is replaced,
// independently, by its equal-width bin among ceil(1/fraction) bins fixed over
// the declared domain. Hierarchical categoricals move one level up; flat
// categoricals are kept. Identifier columns are dropped.
absl::StatusOr<Dataset> CoarsenNaive(const Dataset& ds, double fraction);

// Bin of `v` under CoarsenNaive, as an Interval cell. Exposed for tests.
CellValue CoarsenValue(double v, double min, double max, double fraction);

// MDAV-generic fixed-size microaggregation over RecordDistance on the
// quasi-identifiers. The center of the remaining records is their medoid.
// Every cluster has between k and 2k-1 records unless N < 2k, in which case
// there is a single cluster. All ties go to the lowest record index.
absl::StatusOr<Clustering> MdavClusters(const Dataset& ds, int k);
Clustering MdavClusters(const QiSpace& space, int k);

namespace internal {
// The first MDAV center: the record minimizing the sum of distances to all
// others, ties to the lowest index.
size_t MdavMedoid(const QiSpace& space);
}  // namespace internal

// Generalizes the quasi-identifiers of `cluster` to their common range.
// Returns one cell per schema.quasi_identifiers() entry: an Interval for
// numbers, the LCA node for hierarchical values and a ValueSet otherwise.
// Values shared by the whole cluster stay concrete.
absl::StatusOr<std::vector<CellValue>> GeneralizeCluster(
    const Dataset& ds, absl::Span<const size_t> cluster);

// Replaces the quasi-identifiers of every record by its cluster's generalized
// cells and drops identifier columns. Record order is preserved.
absl::StatusOr<Dataset> ReleaseClusters(const Dataset& ds,
                                        const Clustering& clustering,
                                        const Provenance& provenance);

// k-anonymity via MdavClusters followed by GeneralizeCluster.
absl::StatusOr<Dataset> KAnonymize(const Dataset& ds, int k);

// Distribution of a confidential attribute, aligned to a fixed support.
class ConfidentialDistribution {
 public:
  // Numeric/date attributes use the ordered EMD over the sorted distinct
  // values; categorical ones use total variation over the distinct values.
  static absl::StatusOr<ConfidentialDistribution> Create(const Dataset& ds,
                                                         size_t attr);

  bool ordered() const { return ordered_; }
  size_t support_size() const { return global_.size(); }
  // Support position of each record's value.
  const std::vector<size_t>& codes() const { return codes_; }
  // Global relative frequencies.
  const std::vector<double>& global() const { return global_; }

  // EMD between the members' distribution and the global one.
  double EmdOf(absl::Span<const size_t> members) const;

 private:
  ConfidentialDistribution() = default;

  bool ordered_ = true;
  std::vector<size_t> codes_;
  std::vector<double> global_;
};

// Clustering stage of TCloseAnonymize before any merge: records are sorted
// on the confidential attribute, cut into k contiguous slices, and every
// cluster takes the lowest-index free record plus its QI-nearest free record
// from each other slice. Leftovers join their QI-nearest cluster.
absl::StatusOr<Clustering> TCloseInitialClusters(const Dataset& ds, int k,
                                                 size_t confidential_attr);

// k-anonymity plus t-closeness on `confidential`: TCloseInitialClusters,
// then clusters whose EMD exceeds t are merged into the cluster with the
// nearest generalized quasi-identifiers until every cluster satisfies t.
absl::StatusOr<Dataset> TCloseAnonymize(const Dataset& ds, int k, double t,
                                        const std::string& confidential);

// Privacy check of a released dataset.
struct AnonymizationReport {
  int k = 1;
  size_t n = 0;
  size_t n_classes = 0;
  size_t min_class_size = 0;
  double unequivocal_rate = 0;
  double random_correct_rate = 0;
  bool k_satisfied = false;
  std::optional<double> t;
  std::optional<std::string> confidential;
  std::optional<double> max_emd;
  std::optional<bool> t_satisfied;

  bool passed() const { return k_satisfied && t_satisfied.value_or(true); }
};

// Equivalence classes are taken over all quasi-identifiers of `ds`.
absl::StatusOr<AnonymizationReport> VerifyAnonymity(
    const Dataset& ds, int k, std::optional<double> t = std::nullopt,
    std::optional<std::string> confidential = std::nullopt);

}  // namespace sdc

#endif  // SDC_ANONYMIZE_H_
