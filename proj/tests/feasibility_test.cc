// Copyright 2026 The swipt-sched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swipt/feasibility.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "swipt/errors.h"
#include "swipt/orderstats.h"

namespace swipt {
namespace {

// Subset probability bound in its unsimplified binomial form.
double UnsimplifiedBound(int n, int s, int l) {
  return (Binomial(n - 1, s - 1) * l + Binomial(l, s) * (1.0 - s)) / Binomial(n, s);
}

std::vector<double> RandomSimplexPoint(std::mt19937_64& rng, int n, double skew) {
  std::gamma_distribution<double> g(skew, 1.0);
  std::vector<double> p(n);
  for (double& v : p) v = g(rng);
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& v : p) v /= total;
  return p;
}

TEST(SubsetProbabilityBound, MatchesBinomialForm) {
  for (int n = 1; n <= 12; ++n) {
    for (int s = 1; s <= n; ++s) {
      for (int l = s; l <= n; ++l) {
        EXPECT_NEAR(SubsetProbabilityBound(n, s, l), UnsimplifiedBound(n, s, l), 1e-13)
            << n << "," << s << "," << l;
      }
    }
  }
  EXPECT_DOUBLE_EQ(SubsetProbabilityBound(4, 2, 4), 1.0);
}

TEST(CheckEtFeasibility, FullAllowedSetIsAlwaysFeasible) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 9;
    const auto p = RandomSimplexPoint(rng, n, 0.2);
    EXPECT_TRUE(CheckEtFeasibility(p, n).feasible);
  }
}

TEST(CheckEtFeasibility, ReferenceInstances) {
  const std::vector<double> feasible{0.0884, 0.0884, 0.4116, 0.4116};
  EXPECT_TRUE(CheckEtFeasibility(feasible, 2).feasible);
  const std::vector<double> infeasible{0.0603, 0.0603, 0.4397, 0.4397};
  const auto report = CheckEtFeasibility(infeasible, 2);
  EXPECT_FALSE(report.feasible);
  ASSERT_EQ(report.MinViolatedSubsetSize(), 2);
  EXPECT_FALSE(report.ViolatesIndividualLimit());
  const auto& v = report.violations.front();
  EXPECT_EQ(v.condition, 2);
  EXPECT_EQ(v.users, (std::vector<std::size_t>{2, 3}));
  EXPECT_NEAR(v.lhs, 0.8794, 1e-12);
  EXPECT_NEAR(v.rhs, 5.0 / 6.0, 1e-15);
}

TEST(CheckEtFeasibility, IndividualLimit) {
  const std::vector<double> p{0.7, 0.1, 0.1, 0.1};
  const auto report = CheckEtFeasibility(p, 2);
  EXPECT_FALSE(report.feasible);
  EXPECT_TRUE(report.ViolatesIndividualLimit());
}

TEST(CheckEtFeasibility, SingleUser) {
  const std::vector<double> p{1.0};
  EXPECT_TRUE(CheckEtFeasibility(p, 1).feasible);
  EXPECT_TRUE(CheckEtFeasibilityExhaustive(p, 1).feasible);
}

TEST(CheckEtFeasibility, RejectsInvalidInput) {
  EXPECT_THROW(CheckEtFeasibility(std::vector<double>{0.5, 0.4}, 1), DomainError);
  EXPECT_THROW(CheckEtFeasibility(std::vector<double>{1.2, -0.2}, 1), DomainError);
  EXPECT_THROW(CheckEtFeasibility(std::vector<double>{0.5, 0.5}, 3), DomainError);
  EXPECT_THROW(CheckEtFeasibility(std::vector<double>{0.5, 0.5}, 0), DomainError);
}

TEST(CheckEtFeasibilityExhaustive, GuardsSize) {
  std::vector<double> p(21, 1.0 / 21);
  EXPECT_THROW(CheckEtFeasibilityExhaustive(p, 3), SizeError);
  EXPECT_NO_THROW(CheckEtFeasibility(p, 3));
}

TEST(CheckEtFeasibilityExhaustive, FullSubsetNeverBinds) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 7;
    const int s = 1 + trial % n;
    const auto report = CheckEtFeasibilityExhaustive(RandomSimplexPoint(rng, n, 0.3), s);
    for (const auto& v : report.violations) {
      EXPECT_LT(v.subset_size, n);
    }
  }
}

TEST(CheckEtFeasibility, FastPathAgreesWithEnumeration) {
  std::mt19937_64 rng(20240601);
  int infeasible = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const int s = 1 + static_cast<int>(rng() % n);
    const double skew = (trial % 3 == 0) ? 0.3 : 2.0;
    const auto p = RandomSimplexPoint(rng, n, skew);
    const auto fast = CheckEtFeasibility(p, s);
    const auto slow = CheckEtFeasibilityExhaustive(p, s);
    ASSERT_EQ(fast.feasible, slow.feasible) << "trial " << trial;
    EXPECT_EQ(fast.feasible, fast.violations.empty());
    EXPECT_EQ(fast.MinViolatedSubsetSize(), slow.MinViolatedSubsetSize()) << trial;
    infeasible += !fast.feasible;
  }
  // Both verdicts must actually be exercised.
  EXPECT_GT(infeasible, 50);
  EXPECT_LT(infeasible, 950);
}

}  // namespace
}  // namespace swipt
