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
#include <queue>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "sdc/anonymize.h"
#include "sdc/qi_space.h"
#include "sdc/status_macros.h"

namespace sdc {
namespace {

using ColumnKind = QiSpace::ColumnKind;

// Numeric columns with at most this many distinct values are handled like
// categorical ones: per-value tables instead of per-record arithmetic.
constexpr size_t kMaxLevels = 4096;

// Unassigned-record bookkeeping for MDAV. Each quasi-identifier column is
// mirrored by a lane packed over the active records, plus per-value counts
// so that the medoid (argmin of the sum of distances to all other active
// records) costs O(N) per query instead of O(N^2).
class MdavState {
 public:
  MdavState(const QiSpace& space, int k) : space_(space), k_(k) {
    const size_t n = space.size();
    active_.resize(n);
    for (size_t i = 0; i < n; ++i) active_[i] = i;
    assigned_.assign(n, 0);
    selected_.assign(n, 0);
    score_.assign(n, 0.0);
    lanes_.resize(space.dims());
    for (size_t c = 0; c < space.dims(); ++c) {
      const QiSpace::Column& col = space.columns()[c];
      Lane& lane = lanes_[c];
      lane.kind = col.kind;
      if (col.kind == ColumnKind::kNumeric) {
        std::vector<double> levels = col.values;
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        if (levels.size() > kMaxLevels) {
          lane.values = col.values;
          lane.sorted = active_;
          std::stable_sort(lane.sorted.begin(), lane.sorted.end(),
                           [&col](size_t a, size_t b) {
                             return col.values[a] < col.values[b];
                           });
          continue;
        }
        lane.tabled = true;
        lane.codes.resize(n);
        for (size_t i = 0; i < n; ++i) {
          lane.codes[i] = static_cast<int32_t>(
              std::lower_bound(levels.begin(), levels.end(), col.values[i]) -
              levels.begin());
        }
        lane.levels = std::move(levels);
      } else {
        lane.tabled = true;
        lane.codes = col.codes;
      }
      const size_t num_codes = col.kind == ColumnKind::kNumeric
                                   ? lane.levels.size()
                                   : static_cast<size_t>(col.num_codes);
      lane.own.assign(num_codes, 0);
      lane.table.assign(num_codes, 0.0);
      for (int32_t code : lane.codes) ++lane.own[code];
      if (col.kind == ColumnKind::kHierarchy) {
        lane.subtree.assign(num_codes, 0);
        for (int32_t code : lane.codes) {
          for (int32_t x = code; x >= 0; x = col.hierarchy->Parent(x)) {
            ++lane.subtree[x];
          }
        }
      }
    }
  }

  size_t remaining() const { return active_.size(); }

  size_t Medoid() {
    const size_t n = active_.size();
    for (size_t id : active_) score_[id] = 0.0;
    for (size_t c = 0; c < space_.dims(); ++c) {
      const QiSpace::Column& col = space_.columns()[c];
      Lane& lane = lanes_[c];
      if (!lane.tabled) {
        AddSortedSums(col, lane);
        continue;
      }
      switch (col.kind) {
        case ColumnKind::kNumeric:
          FillLevelSums(col, lane);
          break;
        case ColumnKind::kFlat:
          for (size_t v = 0; v < lane.own.size(); ++v) {
            lane.table[v] =
                static_cast<double>(static_cast<int64_t>(n) - lane.own[v]);
          }
          break;
        case ColumnKind::kHierarchy:
          for (size_t v = 0; v < lane.own.size(); ++v) {
            if (lane.own[v] > 0) {
              lane.table[v] =
                  HierarchySum(col, lane, static_cast<int32_t>(v), n);
            }
          }
          break;
      }
      const int32_t* codes = lane.codes.data();
      const double* table = lane.table.data();
      for (size_t p = 0; p < n; ++p) score_[active_[p]] += table[codes[p]];
    }
    size_t best = active_.front();
    for (size_t id : active_) {
      if (score_[id] < score_[best]) best = id;
    }
    return best;
  }
  Clustering Run() {
    Clustering out;
    out.k = k_;
    const size_t k = static_cast<size_t>(k_);
    while (remaining() >= 3 * k) {
      const size_t medoid = Medoid();
      const size_t r = Farthest(medoid);
      size_t s = 0;
      out.clusters.push_back(ClusterAround(r, &s));
      out.clusters.push_back(ClusterAround(s, nullptr));
    }
    if (remaining() >= 2 * k) {
      const size_t r = Farthest(Medoid());
      out.clusters.push_back(ClusterAround(r, nullptr));
    }
    if (remaining() > 0) {
      std::vector<size_t> rest = active_;
      Assign(rest);
      out.clusters.push_back(std::move(rest));
    }
    return out;
  }

 private:
  struct Lane {
    ColumnKind kind = ColumnKind::kNumeric;
    bool tabled = false;
    // Tabled lanes: value code per active record (aligned with active_), the
    // active count per code and a per-code scratch table.
    std::vector<int32_t> codes;
    std::vector<int64_t> own;
    std::vector<double> table;
    std::vector<double> levels;    // tabled numeric: sorted distinct values
    std::vector<int64_t> subtree;   // kHierarchy: active records per subtree
    // Untabled numeric lanes: value per active record (aligned with
    // active_) and the active ids sorted by value.
    std::vector<double> values;
    std::vector<size_t> sorted;
  };

  // table[v] = sum over active j of |level_v - x_j| / range, for every level
  // still present, from one sweep over the levels.
  static void FillLevelSums(const QiSpace::Column& col, Lane& lane) {
    double total = 0;
    int64_t count = 0;
    for (size_t v = 0; v < lane.levels.size(); ++v) {
      total += lane.levels[v] * static_cast<double>(lane.own[v]);
      count += lane.own[v];
    }
    double less_sum = 0;
    int64_t less_count = 0;
    for (size_t v = 0; v < lane.levels.size(); ++v) {
      const int64_t here = lane.own[v];
      if (here == 0) continue;
      const double x = lane.levels[v];
      const double group_sum = x * static_cast<double>(here);
      const double greater_count =
          static_cast<double>(count - less_count - here);
      const double greater_sum = total - less_sum - group_sum;
      const double f = (x * static_cast<double>(less_count) - less_sum) +
                       (greater_sum - x * greater_count);
      lane.table[v] = f / col.range;
      less_count += here;
      less_sum += group_sum;
    }
  }

  // Adds sum_j |x_i - x_j| / range for every active i with one sweep over
  // the records sorted by value. Equal values share one computed sum.
  void AddSortedSums(const QiSpace::Column& col, Lane& lane) {
    std::vector<size_t>& sorted = lane.sorted;
    sorted.erase(std::remove_if(sorted.begin(), sorted.end(),
                                [this](size_t id) { return assigned_[id]; }),
                 sorted.end());
    const size_t n = sorted.size();
    double total = 0;
    for (size_t id : sorted) total += col.values[id];
    double less_sum = 0;
    size_t less_count = 0;
    for (size_t p = 0; p < n;) {
      const double v = col.values[sorted[p]];
      size_t q = p;
      while (q < n && col.values[sorted[q]] == v) ++q;
      const size_t count = q - p;
      const double group_sum = v * static_cast<double>(count);
      const double greater_count =
          static_cast<double>(n - less_count - count);
      const double greater_sum = total - less_sum - group_sum;
      const double f = (v * static_cast<double>(less_count) - less_sum) +
                       (greater_sum - v * greater_count);
      const double contribution = f / col.range;
      for (size_t i = p; i < q; ++i) score_[sorted[i]] += contribution;
      less_count += count;
      less_sum += group_sum;
      p = q;
    }
  }

  // sum over active j of (H - depth(lca(v, v_j))) / H, for v_j != v.
  static double HierarchySum(const QiSpace::Column& col, const Lane& lane,
                             int32_t v, size_t n) {
    const Hierarchy& h = *col.hierarchy;
    const int64_t same = lane.own[v];
    int64_t total = (static_cast<int64_t>(n) - same) * col.height;
    for (int32_t x = v; x != h.root(); x = h.Parent(x)) {
      total -= lane.subtree[x] - same;
    }
    return static_cast<double>(total) / col.height;
  }

  // Distances from record `from` to every active record, in active_ order.
  // Same summation order as QiSpace::Distance, so results are bit-identical.
  void DistancesToActive(size_t from) {
    const size_t n = active_.size();
    const size_t dims = space_.dims();
    dist_.resize(n);
    for (size_t c = 0; c < dims; ++c) {
      const QiSpace::Column& col = space_.columns()[c];
      Lane& lane = lanes_[c];
      if (!lane.tabled) continue;
      for (size_t v = 0; v < lane.table.size(); ++v) {
        lane.table[v] =
            col.kind == ColumnKind::kNumeric
                ? internal::NumericDistance(col.values[from], lane.levels[v],
                                            col.range)
                : space_.CodeDistance(c, col.codes[from],
                                      static_cast<int32_t>(v));
      }
    }
    const double divisor = static_cast<double>(dims);
    for (size_t p = 0; p < n; ++p) {
      double sum = 0.0;
      for (size_t c = 0; c < dims; ++c) {
        const Lane& lane = lanes_[c];
        if (lane.tabled) {
          sum += lane.table[lane.codes[p]];
        } else {
          const QiSpace::Column& col = space_.columns()[c];
          sum += internal::NumericDistance(col.values[from], lane.values[p],
                                           col.range);
        }
      }
      dist_[p] = sum / divisor;
    }
  }

  size_t Farthest(size_t from) {
    DistancesToActive(from);
    size_t best = 0;
    for (size_t p = 1; p < active_.size(); ++p) {
      if (dist_[p] > dist_[best]) best = p;
    }
    return active_[best];
  }

  // Forms {center} plus its k-1 nearest active records, ordered by
  // (distance, id), and assigns them. If `farthest_left` is set, it receives
  // the active record farthest from `center` among those left over.
  std::vector<size_t> ClusterAround(size_t center, size_t* farthest_left) {
    DistancesToActive(center);
    const size_t take = std::min(static_cast<size_t>(k_ - 1),
                                 active_.size() - 1);
    // Max-heap of the best `take` (distance, position) pairs seen so far.
    // Positions follow ids, so comparing positions breaks ties by id.
    std::priority_queue<std::pair<double, size_t>> best;
    for (size_t p = 0; p < active_.size() && take > 0; ++p) {
      if (active_[p] == center) continue;
      std::pair<double, size_t> item(dist_[p], p);
      if (best.size() < take) {
        best.push(item);
      } else if (item < best.top()) {
        best.pop();
        best.push(item);
      }
    }
    std::vector<size_t> cluster = {center};
    std::vector<size_t> picked;
    while (!best.empty()) {
      picked.push_back(best.top().second);
      cluster.push_back(active_[best.top().second]);
      selected_[best.top().second] = 1;
      best.pop();
    }
    std::sort(cluster.begin(), cluster.end());
    if (farthest_left != nullptr) {
      size_t far = active_.size();
      for (size_t p = 0; p < active_.size(); ++p) {
        if (selected_[p] || active_[p] == center) continue;
        if (far == active_.size() || dist_[p] > dist_[far]) far = p;
      }
      *farthest_left = active_[far];
    }
    for (size_t p : picked) selected_[p] = 0;
    Assign(cluster);
    return cluster;
  }

  // Removes `ids` (ascending, all active) from the active set.
  void Assign(const std::vector<size_t>& ids) {
    std::vector<size_t> gone;
    gone.reserve(ids.size());
    for (size_t id : ids) {
      assigned_[id] = 1;
      gone.push_back(static_cast<size_t>(
          std::lower_bound(active_.begin(), active_.end(), id) -
          active_.begin()));
    }
    for (size_t c = 0; c < lanes_.size(); ++c) {
      Lane& lane = lanes_[c];
      if (!lane.tabled) {
        RemovePositions(gone, lane.values);
        continue;
      }
      for (size_t p : gone) {
        const int32_t code = lane.codes[p];
        --lane.own[code];
        if (lane.kind == ColumnKind::kHierarchy) {
          const Hierarchy& h = *space_.columns()[c].hierarchy;
          for (int32_t x = code; x >= 0; x = h.Parent(x)) --lane.subtree[x];
        }
      }
      RemovePositions(gone, lane.codes);
    }
    RemovePositions(gone, active_);
  }

  // Erases ascending positions `gone` from `v`, shifting whole segments.
  template <typename T>
  static void RemovePositions(const std::vector<size_t>& gone,
                              std::vector<T>& v) {
    if (gone.empty()) return;
    size_t write = gone.front();
    for (size_t g = 0; g < gone.size(); ++g) {
      const size_t begin = gone[g] + 1;
      const size_t end = g + 1 < gone.size() ? gone[g + 1] : v.size();
      std::copy(v.begin() + begin, v.begin() + end, v.begin() + write);
      write += end - begin;
    }
    v.resize(write);
  }

  const QiSpace& space_;
  const int k_;
  std::vector<size_t> active_;  // ascending record ids
  std::vector<uint8_t> assigned_;
  std::vector<double> score_;   // by record id
  std::vector<Lane> lanes_;
  std::vector<double> dist_;
  std::vector<uint8_t> selected_;  // scratch, aligned with active_
};

}  // namespace

namespace internal {

size_t MdavMedoid(const QiSpace& space) {
  MdavState state(space, 1);
  return state.Medoid();
}

}  // namespace internal

Clustering MdavClusters(const QiSpace& space, int k) {
  if (space.size() == 0) return Clustering{{}, k};
  MdavState state(space, k);
  return state.Run();
}

absl::StatusOr<Clustering> MdavClusters(const Dataset& ds, int k) {
  if (k < 1) return absl::InvalidArgumentError("k must be >= 1");
  if (ds.size() == 0) return absl::InvalidArgumentError("dataset is empty");
  SDC_ASSIGN_OR_RETURN(QiSpace space, QiSpace::Build(ds));
  return MdavClusters(space, k);
}

}  // namespace sdc
