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

#include "sdc/anonymize.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "sdc/emd.h"
#include "sdc/risk.h"
#include "sdc/status_macros.h"

namespace sdc {
namespace {

int64_t BinCount(double fraction) {
  const double r = 1.0 / fraction;
  const double nearest = std::round(r);
  if (std::abs(r - nearest) <= 1e-9 * nearest) {
    return static_cast<int64_t>(nearest);
  }
  return static_cast<int64_t>(std::ceil(r));
}

// Output schema of a release: identifiers dropped.
std::shared_ptr<const Schema> ReleaseSchema(const Dataset& ds) {
  if (!ds.schema().has_identifiers()) return ds.shared_schema();
  return std::make_shared<const Schema>(ds.schema().WithoutIdentifiers());
}

// Positions of the non-identifier attributes of `schema`.
std::vector<size_t> KeptAttributes(const Schema& schema) {
  std::vector<size_t> kept;
  for (size_t a = 0; a < schema.size(); ++a) {
    if (schema.attribute(a).role != AttributeRole::kIdentifier) {
      kept.push_back(a);
    }
  }
  return kept;
}

}  // namespace

CellValue CoarsenValue(double v, double min, double max, double fraction) {
  const int64_t bins = BinCount(fraction);
  const double width = (max - min) * fraction;
  auto edge = [&](int64_t j) { return min + static_cast<double>(j) * width; };
  int64_t idx = static_cast<int64_t>(std::floor((v - min) / width));
  idx = std::clamp<int64_t>(idx, 0, bins - 1);
  // Keep lo <= v <= hi despite rounding in the quotient.
  while (idx > 0 && edge(idx) > v) --idx;
  while (idx + 1 < bins && edge(idx + 1) <= v) ++idx;
  const double hi = idx + 1 == bins ? max : edge(idx + 1);
  return CellValue::Interval(edge(idx), hi);
}

absl::StatusOr<Dataset> CoarsenNaive(const Dataset& ds, double fraction) {
  if (!(fraction > 0 && fraction <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("coarsening fraction ", fraction, " is outside (0, 1]"));
  }
  const Schema& schema = ds.schema();
  const std::vector<size_t> kept = KeptAttributes(schema);
  std::vector<std::vector<CellValue>> rows;
  rows.reserve(ds.size());
  for (const Record& rec : ds.records()) {
    std::vector<CellValue> row;
    row.reserve(kept.size());
    for (size_t a : kept) {
      const AttributeSchema& attr = schema.attribute(a);
      const CellValue& v = rec.cells[a];
      if (!attr.is_quasi_identifier()) {
        row.push_back(v);
        continue;
      }
      if (v.is_missing()) {
        return absl::FailedPreconditionError(absl::StrCat(
            "missing value in attribute '", attr.name, "' at record ",
            rec.index));
      }
      if (attr.is_numeric()) {
        if (!v.is_number()) {
          return absl::InvalidArgumentError(absl::StrCat(
              "coarsening expects concrete numbers; attribute '", attr.name,
              "' holds ", v.DebugString(), " at record ", rec.index));
        }
        row.push_back(CoarsenValue(v.number(), attr.min, attr.max, fraction));
      } else if (attr.has_hierarchy()) {
        const Hierarchy& h = *attr.hierarchy;
        const int32_t node = v.is_node() ? v.node() : *h.Find(v.category());
        const int32_t up = node == h.root() ? node : h.Parent(node);
        row.push_back(CellValue::Node(up));
      } else {
        row.push_back(v);
      }
    }
    rows.push_back(std::move(row));
  }
  Provenance provenance;
  provenance.mechanism = Mechanism::kCoarsened;
  provenance.fraction = fraction;
  return Dataset::Create(ReleaseSchema(ds), std::move(rows), provenance);
}

absl::StatusOr<std::vector<CellValue>> GeneralizeCluster(
    const Dataset& ds, absl::Span<const size_t> cluster) {
  if (cluster.empty()) return absl::InvalidArgumentError("empty cluster");
  const Schema& schema = ds.schema();
  std::vector<CellValue> out;
  out.reserve(schema.quasi_identifiers().size());
  for (size_t i : cluster) {
    if (i >= ds.size()) {
      return absl::OutOfRangeError(absl::StrCat("record index ", i));
    }
  }
  for (size_t a : schema.quasi_identifiers()) {
    const AttributeSchema& attr = schema.attribute(a);
    for (size_t i : cluster) {
      if (ds.cell(i, a).is_missing()) {
        return absl::FailedPreconditionError(absl::StrCat(
            "missing value in attribute '", attr.name, "' at record ", i));
      }
    }
    if (cluster.size() == 1) {
      out.push_back(ds.cell(cluster.front(), a));
      continue;
    }
    if (attr.is_numeric()) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      bool all_numbers = true;
      for (size_t i : cluster) {
        const CellValue& v = ds.cell(i, a);
        if (v.is_number()) {
          lo = std::min(lo, v.number());
          hi = std::max(hi, v.number());
        } else {
          all_numbers = false;
          lo = std::min(lo, v.interval().lo);
          hi = std::max(hi, v.interval().hi);
        }
      }
      out.push_back(all_numbers && lo == hi ? CellValue::Number(lo)
                                            : CellValue::Interval(lo, hi));
    } else if (attr.has_hierarchy()) {
      const Hierarchy& h = *attr.hierarchy;
      int32_t lca = -1;
      for (size_t i : cluster) {
        const CellValue& v = ds.cell(i, a);
        const int32_t node = v.is_node() ? v.node() : *h.Find(v.category());
        lca = lca < 0 ? node : h.Lca(lca, node);
      }
      out.push_back(h.IsLeaf(lca) ? CellValue::Category(h.Label(lca))
                                  : CellValue::Node(lca));
    } else {
      std::vector<std::string> members;
      for (size_t i : cluster) {
        const CellValue& v = ds.cell(i, a);
        if (v.is_category()) {
          members.push_back(v.category());
        } else {
          members.insert(members.end(), v.value_set().begin(),
                         v.value_set().end());
        }
      }
      CellValue set = CellValue::ValueSet(std::move(members));
      out.push_back(set.value_set().size() == 1
                        ? CellValue::Category(set.value_set().front())
                        : std::move(set));
    }
  }
  return out;
}

absl::StatusOr<Dataset> ReleaseClusters(const Dataset& ds,
                                        const Clustering& clustering,
                                        const Provenance& provenance) {
  const Schema& schema = ds.schema();
  const std::vector<size_t> kept = KeptAttributes(schema);
  // Position of each original attribute in the release, or -1 if dropped.
  std::vector<int> out_pos(schema.size(), -1);
  for (size_t p = 0; p < kept.size(); ++p) out_pos[kept[p]] = static_cast<int>(p);

  std::vector<std::vector<CellValue>> rows(ds.size());
  std::vector<uint8_t> covered(ds.size(), 0);
  for (const std::vector<size_t>& cluster : clustering.clusters) {
    SDC_ASSIGN_OR_RETURN(std::vector<CellValue> generalized,
                         GeneralizeCluster(ds, cluster));
    for (size_t i : cluster) {
      if (covered[i]++) {
        return absl::InvalidArgumentError(
            absl::StrCat("record ", i, " appears in two clusters"));
      }
      std::vector<CellValue>& row = rows[i];
      row.reserve(kept.size());
      for (size_t a : kept) row.push_back(ds.cell(i, a));
      const std::vector<size_t>& qi = schema.quasi_identifiers();
      for (size_t q = 0; q < qi.size(); ++q) {
        row[out_pos[qi[q]]] = generalized[q];
      }
    }
  }
  for (size_t i = 0; i < ds.size(); ++i) {
    if (!covered[i]) {
      return absl::InvalidArgumentError(
          absl::StrCat("record ", i, " is in no cluster"));
    }
  }
  return Dataset::Create(ReleaseSchema(ds), std::move(rows), provenance);
}

absl::StatusOr<Dataset> KAnonymize(const Dataset& ds, int k) {
  if (k < 1) return absl::InvalidArgumentError("k must be >= 1");
  if (static_cast<size_t>(k) > ds.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "k = ", k, " exceeds the number of records (", ds.size(), ")"));
  }
  SDC_ASSIGN_OR_RETURN(Clustering clustering, MdavClusters(ds, k));
  Provenance provenance;
  provenance.mechanism = Mechanism::kKAnonymous;
  provenance.k = k;
  return ReleaseClusters(ds, clustering, provenance);
}

absl::StatusOr<ConfidentialDistribution> ConfidentialDistribution::Create(
    const Dataset& ds, size_t attr) {
  const AttributeSchema& a = ds.schema().attribute(attr);
  if (ds.size() == 0) return absl::InvalidArgumentError("dataset is empty");
  ConfidentialDistribution dist;
  dist.ordered_ = a.is_numeric();
  dist.codes_.resize(ds.size());
  for (size_t i = 0; i < ds.size(); ++i) {
    const CellValue& v = ds.cell(i, attr);
    if (dist.ordered_ ? !v.is_number() : !v.is_category()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "confidential attribute '", a.name,
          "' must hold concrete values; record ", i, " has ",
          v.DebugString()));
    }
  }
  size_t support = 0;
  if (dist.ordered_) {
    std::vector<double> values;
    for (const Record& r : ds.records()) values.push_back(r.cells[attr].number());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (size_t i = 0; i < ds.size(); ++i) {
      dist.codes_[i] = static_cast<size_t>(
          std::lower_bound(values.begin(), values.end(),
                           ds.cell(i, attr).number()) -
          values.begin());
    }
    support = values.size();
  } else {
    std::vector<std::string> values;
    for (const Record& r : ds.records()) {
      values.push_back(r.cells[attr].category());
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    absl::flat_hash_map<std::string, size_t> index;
    for (size_t i = 0; i < values.size(); ++i) index[values[i]] = i;
    for (size_t i = 0; i < ds.size(); ++i) {
      dist.codes_[i] = index[ds.cell(i, attr).category()];
    }
    support = values.size();
  }
  dist.global_.assign(support, 0.0);
  std::vector<size_t> counts(support, 0);
  for (size_t c : dist.codes_) ++counts[c];
  for (size_t v = 0; v < support; ++v) {
    dist.global_[v] =
        static_cast<double>(counts[v]) / static_cast<double>(ds.size());
  }
  return dist;
}

double ConfidentialDistribution::EmdOf(absl::Span<const size_t> members) const {
  if (global_.size() < 2 || members.empty()) return 0.0;
  std::vector<size_t> counts(global_.size(), 0);
  for (size_t i : members) ++counts[codes_[i]];
  std::vector<double> p(global_.size());
  for (size_t v = 0; v < p.size(); ++v) {
    p[v] = static_cast<double>(counts[v]) / static_cast<double>(members.size());
  }
  absl::StatusOr<double> emd =
      ordered_ ? EmdOrdered(p, global_) : EmdCategorical(p, global_);
  return *emd;
}

absl::StatusOr<AnonymizationReport> VerifyAnonymity(
    const Dataset& ds, int k, std::optional<double> t,
    std::optional<std::string> confidential) {
  if (k < 1) return absl::InvalidArgumentError("k must be >= 1");
  if (t.has_value() && !confidential.has_value()) {
    return absl::InvalidArgumentError(
        "a t threshold needs a confidential attribute");
  }
  if (t.has_value() && !(*t >= 0 && *t <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("t = ", *t, " is outside [0, 1]"));
  }
  if (ds.size() == 0) return absl::InvalidArgumentError("dataset is empty");
  const Schema& schema = ds.schema();
  SDC_ASSIGN_OR_RETURN(std::vector<uint32_t> ids,
                       ClassIds(ds, schema.quasi_identifiers()));
  std::vector<std::vector<size_t>> classes;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= classes.size()) classes.resize(ids[i] + 1);
    classes[ids[i]].push_back(i);
  }
  AnonymizationReport report;
  report.k = k;
  report.n = ds.size();
  report.n_classes = classes.size();
  report.min_class_size = ds.size();
  size_t singletons = 0;
  for (const auto& c : classes) {
    report.min_class_size = std::min(report.min_class_size, c.size());
    if (c.size() == 1) ++singletons;
  }
  const double n = static_cast<double>(ds.size());
  report.unequivocal_rate = static_cast<double>(singletons) / n;
  report.random_correct_rate = static_cast<double>(classes.size()) / n;
  report.k_satisfied = report.min_class_size >= static_cast<size_t>(k);
  if (t.has_value()) {
    std::optional<size_t> attr = schema.IndexOf(*confidential);
    if (!attr.has_value()) {
      return absl::NotFoundError(
          absl::StrCat("unknown attribute '", *confidential, "'"));
    }
    if (schema.attribute(*attr).role != AttributeRole::kConfidential) {
      return absl::InvalidArgumentError(absl::StrCat(
          "attribute '", *confidential, "' is not confidential"));
    }
    SDC_ASSIGN_OR_RETURN(ConfidentialDistribution dist,
                         ConfidentialDistribution::Create(ds, *attr));
    double max_emd = 0;
    for (const auto& c : classes) max_emd = std::max(max_emd, dist.EmdOf(c));
    report.t = t;
    report.confidential = confidential;
    report.max_emd = max_emd;
    report.t_satisfied = max_emd <= *t;
  }
  return report;
}

}  // namespace sdc
