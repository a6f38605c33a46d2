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
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "sdc/anonymize.h"
#include "sdc/distance.h"
#include "sdc/qi_space.h"
#include "test_util.h"

namespace sdc {
namespace {

using ::sdc::testing::Categorical;
using ::sdc::testing::Date;
using ::sdc::testing::Hierarchical;
using ::sdc::testing::MakeSchema;
using ::sdc::testing::Numeric;
using ::sdc::testing::NumbersDataset;
using ::sdc::testing::RandomData;
using ::sdc::testing::SmallTree;
using ::testing::ElementsAre;

void ExpectPartition(const Clustering& c, size_t n) {
  std::vector<int> seen(n, 0);
  for (const auto& cluster : c.clusters) {
    for (size_t i : cluster) {
      ASSERT_LT(i, n);
      ++seen[i];
    }
  }
  for (size_t i = 0; i < n; ++i) EXPECT_EQ(seen[i], 1) << i;
}

void ExpectSizes(const Clustering& c, size_t n, size_t k) {
  if (n < 2 * k) {
    ASSERT_EQ(c.clusters.size(), 1u);
    EXPECT_EQ(c.clusters[0].size(), n);
    return;
  }
  for (const auto& cluster : c.clusters) {
    EXPECT_GE(cluster.size(), k);
    EXPECT_LE(cluster.size(), 2 * k - 1);
  }
}

std::vector<std::set<double>> ValuesOf(const Clustering& c,
                                       const std::vector<double>& v) {
  std::vector<std::set<double>> out;
  for (const auto& cluster : c.clusters) {
    std::set<double> s;
    for (size_t i : cluster) s.insert(v[i]);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Minimum within-cluster sum of squared errors over every partition whose
// blocks have sizes in [k, 2k-1].
double BruteForceMinSse(const std::vector<double>& v, size_t k,
                        std::vector<std::vector<size_t>>* best) {
  double best_sse = std::numeric_limits<double>::infinity();
  std::vector<std::vector<size_t>> blocks;
  std::function<void(size_t)> place = [&](size_t i) {
    if (i == v.size()) {
      double sse = 0;
      for (const auto& b : blocks) {
        if (b.size() < k || b.size() > 2 * k - 1) return;
        double mean = 0;
        for (size_t x : b) mean += v[x] / b.size();
        for (size_t x : b) sse += (v[x] - mean) * (v[x] - mean);
      }
      if (sse < best_sse) {
        best_sse = sse;
        *best = blocks;
      }
      return;
    }
    for (size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(i);
      place(i + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({i});
    place(i + 1);
    blocks.pop_back();
  };
  place(0);
  return best_sse;
}

TEST(MdavTest, OneDimensionalExampleMatchesMinimumSse) {
  const std::vector<double> ages = {1, 2, 3, 10, 11, 12};
  SDC_ASSERT_OK_AND_ASSIGN(Clustering c,
                           MdavClusters(NumbersDataset(ages, 0, 20), 3));
  EXPECT_EQ(c.k, 3);
  EXPECT_THAT(ValuesOf(c, ages),
              ElementsAre(std::set<double>{1, 2, 3},
                          std::set<double>{10, 11, 12}));
  std::vector<std::vector<size_t>> best;
  BruteForceMinSse(ages, 3, &best);
  Clustering oracle{best, 3};
  EXPECT_EQ(ValuesOf(c, ages), ValuesOf(oracle, ages));
}

TEST(MdavTest, KOneGivesSingletons) {
  SDC_ASSERT_OK_AND_ASSIGN(
      Clustering c, MdavClusters(NumbersDataset({4, 1, 4, 2, 9}, 0, 10), 1));
  ASSERT_EQ(c.clusters.size(), 5u);
  ExpectPartition(c, 5);
}

TEST(MdavTest, FewerThanTwoKIsOneCluster) {
  SDC_ASSERT_OK_AND_ASSIGN(
      Clustering c, MdavClusters(NumbersDataset({4, 1, 4, 2, 9}, 0, 10), 3));
  ASSERT_EQ(c.clusters.size(), 1u);
  EXPECT_THAT(c.clusters[0], ElementsAre(0, 1, 2, 3, 4));
}

TEST(MdavTest, RejectsBadK) {
  EXPECT_FALSE(MdavClusters(NumbersDataset({1, 2}, 0, 10), 0).ok());
}

TEST(MdavPropertyTest, SizesWithinBoundsOnRandomData) {
  RandomData gen(31);
  for (int trial = 0; trial < 150; ++trial) {
    auto schema = gen.MixedSchema();
    const size_t n = gen.Int(1, 120);
    Dataset ds = gen.Concrete(schema, n);
    const int k = gen.Int(1, 8);
    SDC_ASSERT_OK_AND_ASSIGN(Clustering c, MdavClusters(ds, k));
    ExpectPartition(c, n);
    ExpectSizes(c, n, k);
  }
}

TEST(MdavPropertyTest, Deterministic) {
  RandomData gen(32);
  auto schema = gen.MixedSchema();
  Dataset ds = gen.Concrete(schema, 300);
  SDC_ASSERT_OK_AND_ASSIGN(Clustering a, MdavClusters(ds, 4));
  SDC_ASSERT_OK_AND_ASSIGN(Clustering b, MdavClusters(ds, 4));
  EXPECT_EQ(a.clusters, b.clusters);
}

double SumTo(const Dataset& ds, size_t i, const std::vector<size_t>& ids) {
  double sum = 0;
  for (size_t j : ids) sum += *RecordDistance(ds.record(i), ds.record(j),
                                              ds.schema());
  return sum;
}

TEST(MdavMedoidTest, MinimizesSumOfDistances) {
  RandomData gen(33);
  for (int trial = 0; trial < 100; ++trial) {
    auto schema = gen.MixedSchema();
    Dataset ds = gen.Concrete(schema, gen.Int(1, 80));
    SDC_ASSERT_OK_AND_ASSIGN(QiSpace space, QiSpace::Build(ds));
    std::vector<size_t> all(ds.size());
    std::iota(all.begin(), all.end(), size_t{0});
    double best = std::numeric_limits<double>::infinity();
    for (size_t i : all) best = std::min(best, SumTo(ds, i, all));
    const size_t m = internal::MdavMedoid(space);
    EXPECT_NEAR(SumTo(ds, m, all), best, 1e-9);
    // Nothing earlier is strictly better by more than rounding.
    for (size_t i = 0; i < m; ++i) {
      EXPECT_GE(SumTo(ds, i, all), best - 1e-9);
    }
  }
}

// Textbook MDAV over RecordDistance, written for clarity rather than speed.
Clustering ReferenceMdav(const Dataset& ds, size_t k) {
  auto dist = [&](size_t a, size_t b) {
    return *RecordDistance(ds.record(a), ds.record(b), ds.schema());
  };
  std::vector<size_t> left(ds.size());
  std::iota(left.begin(), left.end(), size_t{0});
  auto farthest = [&](size_t from) {
    size_t best = left.front();
    for (size_t i : left) {
      if (dist(from, i) > dist(from, best)) best = i;
    }
    return best;
  };
  auto medoid = [&]() {
    size_t best = left.front();
    double best_sum = SumTo(ds, best, left);
    for (size_t i : left) {
      const double s = SumTo(ds, i, left);
      if (s < best_sum) {
        best = i;
        best_sum = s;
      }
    }
    return best;
  };
  auto take = [&](size_t center) {
    std::vector<size_t> order = left;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return dist(center, a) < dist(center, b);
    });
    // The center itself is at distance 0 and comes first among equals only
    // if it has the lowest index, so place it explicitly.
    std::vector<size_t> cluster = {center};
    for (size_t i : order) {
      if (cluster.size() == k) break;
      if (i != center) cluster.push_back(i);
    }
    std::sort(cluster.begin(), cluster.end());
    std::vector<size_t> rest;
    for (size_t i : left) {
      if (!std::binary_search(cluster.begin(), cluster.end(), i)) {
        rest.push_back(i);
      }
    }
    left = rest;
    return cluster;
  };
  Clustering out;
  out.k = static_cast<int>(k);
  while (left.size() >= 3 * k) {
    const size_t r = farthest(medoid());
    out.clusters.push_back(take(r));
    const size_t s = farthest(r);
    out.clusters.push_back(take(s));
  }
  if (left.size() >= 2 * k) out.clusters.push_back(take(farthest(medoid())));
  if (!left.empty()) out.clusters.push_back(left);
  return out;
}

// Schemas whose distances are all dyadic rationals, so every sum is exact
// and ties resolve identically in any summation order.
std::shared_ptr<const Schema> DyadicSchema(RandomData& gen) {
  std::vector<AttributeSchema> attrs;
  const int dims = 1 << gen.Int(0, 2);
  for (int q = 0; q < dims; ++q) {
    const std::string name = absl::StrCat("q", q);
    switch (gen.Int(0, 3)) {
      case 0:
        attrs.push_back(Numeric(name, 0, 8));
        break;
      case 1:
        attrs.push_back(Date(name, 0, 16));
        break;
      case 2:
        attrs.push_back(Categorical(name, {"u", "v", "w"}));
        break;
      default:
        attrs.push_back(Hierarchical(name, SmallTree()));
        break;
    }
  }
  return MakeSchema(std::move(attrs));
}

TEST(MdavReferenceTest, MatchesTextbookProcedureExactly) {
  RandomData gen(34);
  for (int trial = 0; trial < 60; ++trial) {
    auto schema = DyadicSchema(gen);
    Dataset ds = gen.Concrete(schema, gen.Int(1, 70));
    const size_t k = gen.Int(1, 6);
    SDC_ASSERT_OK_AND_ASSIGN(Clustering got, MdavClusters(ds, k));
    const Clustering want = ReferenceMdav(ds, k);
    ASSERT_EQ(got.clusters.size(), want.clusters.size()) << trial;
    for (size_t c = 0; c < got.clusters.size(); ++c) {
      std::vector<size_t> g = got.clusters[c];
      std::sort(g.begin(), g.end());
      EXPECT_EQ(g, want.clusters[c]) << "trial " << trial << " cluster " << c;
    }
  }
}

}  // namespace
}  // namespace sdc
