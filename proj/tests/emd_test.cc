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
#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "sdc/emd.h"
#include "test_util.h"

namespace sdc {
namespace {

using ::sdc::testing::StatusIs;

TEST(EmdOrderedTest, Examples) {
  const std::vector<double> p = {0.5, 0.5, 0};
  const std::vector<double> q = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  SDC_ASSERT_OK_AND_ASSIGN(double d, EmdOrdered(p, q));
  EXPECT_NEAR(d, 0.25, 1e-12);
  SDC_ASSERT_OK_AND_ASSIGN(double same, EmdOrdered(p, p));
  EXPECT_EQ(same, 0);
  const std::vector<double> a = {1, 0};
  const std::vector<double> b = {0, 1};
  SDC_ASSERT_OK_AND_ASSIGN(double extreme, EmdOrdered(a, b));
  EXPECT_EQ(extreme, 1);
}

TEST(EmdCategoricalTest, Examples) {
  const std::vector<double> p = {0.5, 0.5, 0};
  const std::vector<double> q = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  SDC_ASSERT_OK_AND_ASSIGN(double d, EmdCategorical(p, q));
  EXPECT_NEAR(d, 1.0 / 3, 1e-12);
  SDC_ASSERT_OK_AND_ASSIGN(double same, EmdCategorical(q, q));
  EXPECT_EQ(same, 0);
  const std::vector<double> a = {0.5, 0.5, 0, 0};
  const std::vector<double> b = {0, 0, 0.25, 0.75};
  SDC_ASSERT_OK_AND_ASSIGN(double disjoint, EmdCategorical(a, b));
  EXPECT_NEAR(disjoint, 1.0, 1e-15);
}

TEST(EmdTest, RejectsBadInput) {
  const std::vector<double> two = {0.5, 0.5};
  const std::vector<double> three = {0.2, 0.3, 0.5};
  const std::vector<double> one = {1};
  const std::vector<double> unnormalized = {0.5, 0.6};
  const std::vector<double> negative = {1.5, -0.5};
  for (auto* emd : {&EmdOrdered, &EmdCategorical}) {
    EXPECT_THAT((*emd)(two, three).status(),
                StatusIs(absl::StatusCode::kInvalidArgument));
    EXPECT_FALSE((*emd)(one, one).ok());
    EXPECT_FALSE((*emd)(two, unnormalized).ok());
    EXPECT_FALSE((*emd)(negative, two).ok());
  }
}

std::vector<double> RandomDistribution(std::mt19937_64& rng, size_t m) {
  std::vector<double> v(m);
  std::uniform_real_distribution<double> u(0, 1);
  double sum = 0;
  for (double& x : v) {
    // Leave some zeros so sparse supports are exercised.
    x = u(rng) < 0.2 ? 0 : u(rng);
    sum += x;
  }
  if (sum == 0) {
    v[0] = 1;
    return v;
  }
  for (double& x : v) x /= sum;
  return v;
}

// Transport cost of the north-west-corner plan with ground distance
// |i - j| / (m - 1). In one dimension that monotone plan is optimal.
double NorthWestCornerCost(std::vector<double> p, std::vector<double> q) {
  const size_t m = p.size();
  size_t i = 0, j = 0;
  double cost = 0;
  while (i < m && j < m) {
    const double moved = std::min(p[i], q[j]);
    cost += moved * std::abs(static_cast<double>(i) - static_cast<double>(j));
    p[i] -= moved;
    q[j] -= moved;
    if (p[i] <= 1e-15) ++i;
    else ++j;
  }
  return cost / static_cast<double>(m - 1);
}

TEST(EmdPropertyTest, OrderedMatchesTransportOracle) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 500; ++trial) {
    const size_t m = 2 + rng() % 12;
    const auto p = RandomDistribution(rng, m);
    const auto q = RandomDistribution(rng, m);
    SDC_ASSERT_OK_AND_ASSIGN(double d, EmdOrdered(p, q));
    EXPECT_NEAR(d, NorthWestCornerCost(p, q), 1e-12);
  }
}

TEST(EmdPropertyTest, CategoricalMatchesOverlapForm) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    const size_t m = 2 + rng() % 12;
    const auto p = RandomDistribution(rng, m);
    const auto q = RandomDistribution(rng, m);
    // Unit ground distance: everything not shared must move.
    double overlap = 0;
    for (size_t i = 0; i < m; ++i) overlap += std::min(p[i], q[i]);
    SDC_ASSERT_OK_AND_ASSIGN(double d, EmdCategorical(p, q));
    EXPECT_NEAR(d, 1 - overlap, 1e-12);
  }
}

TEST(EmdPropertyTest, MetricAxiomsAndRange) {
  std::mt19937_64 rng(44);
  for (auto* emd : {&EmdOrdered, &EmdCategorical}) {
    for (int trial = 0; trial < 300; ++trial) {
      const size_t m = 2 + rng() % 10;
      const auto p = RandomDistribution(rng, m);
      const auto q = RandomDistribution(rng, m);
      const auto r = RandomDistribution(rng, m);
      const double pq = *(*emd)(p, q);
      const double qp = *(*emd)(q, p);
      const double pr = *(*emd)(p, r);
      const double rq = *(*emd)(r, q);
      EXPECT_EQ(*(*emd)(p, p), 0);
      EXPECT_NEAR(pq, qp, 1e-15);
      EXPECT_LE(pq, pr + rq + 1e-12);
      EXPECT_GE(pq, 0);
      EXPECT_LE(pq, 1 + 1e-12);
    }
  }
}

}  // namespace
}  // namespace sdc
