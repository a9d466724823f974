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

#include "swipt/analytic.h"

#include <cmath>
#include <numeric>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <gtest/gtest.h>

#include "scenarios.h"
#include "swipt/errors.h"
#include "swipt/orderstats.h"

namespace swipt {
namespace {

using testing::IdenticalUsers;
using testing::WeakPairScenario;
using testing::SevenUserScenario;

const double kLn2 = std::log(2.0);

double IntegrateToInfinity(const std::function<double(double)>& f) {
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(f, 1e-13);
}

// Ordered Rayleigh pdf from its definition, independent of the library.
double RayleighOrderedPdf(int n, int j, double x) {
  const double f = std::exp(-x);
  const double F = -std::expm1(-x);
  return n * std::tgamma(n) / (std::tgamma(j) * std::tgamma(n - j + 1)) * f *
         std::pow(F, j - 1) * std::pow(1.0 - F, n - j);
}

Scenario SingleRayleighUser(double snr) {
  return Scenario{{{snr, 0.0}}, 1.0, 1.0, 0.5};
}

Scenario RayleighUsers(int n, double snr) {
  Scenario s;
  s.users.assign(n, FadingParams{snr, 0.0});
  s.tx_power_w = 1.0;
  s.noise_power_w = 1.0;
  s.eta = 0.5;
  return s;
}

TEST(AllowedOrderSet, NormalizesAndFormats) {
  const AllowedOrderSet s({5, 1, 3, 3});
  EXPECT_EQ(s.orders(), (std::vector<int>{1, 3, 5}));
  EXPECT_EQ(s.ToString(), "1,3,5");
  EXPECT_EQ(AllowedOrderSet({2, 1}).ToString(), "1-2");
  EXPECT_EQ(s.Complement(6), (std::vector<int>{2, 4, 6}));
  EXPECT_TRUE(s.Contains(3));
  EXPECT_FALSE(s.Contains(4));
  EXPECT_THROW(AllowedOrderSet({}), DomainError);
  EXPECT_THROW(AllowedOrderSet({0, 2}), DomainError);
  EXPECT_THROW(s.ValidateFor(4), DomainError);
}

TEST(FullAccessCapacity, RayleighUnitSnrMatchesQuadrature) {
  const double ref = IntegrateToInfinity(
      [](double x) { return std::log2(1.0 + x) * std::exp(-x); });
  const double closed = std::exp(1.0) * boost::math::expint(1, 1.0) / kLn2;
  EXPECT_NEAR(FullAccessCapacity(SingleRayleighUser(1.0), 0), ref, 1e-8 * ref);
  EXPECT_NEAR(FullAccessCapacity(SingleRayleighUser(1.0), 0), closed, 1e-12 * closed);
}

TEST(FullAccessCapacity, VanishesWithSnr) {
  EXPECT_LE(FullAccessCapacity(SingleRayleighUser(1e-9), 0), 1e-8);
}

TEST(FullAccessCapacity, RiceanBetweenRayleighAndJensen) {
  const Scenario ricean{{{10.0, 6.0}}, 1.0, 1.0, 0.5};
  const double c = FullAccessCapacity(ricean, 0);
  EXPECT_GE(c, FullAccessCapacity(SingleRayleighUser(10.0), 0) - 0.5);
  EXPECT_LE(c, std::log2(11.0));
  const double ref = IntegrateToInfinity(
      [](double x) { return std::log2(1.0 + 10.0 * x) * NormalizedPdf(6.0, x); });
  EXPECT_NEAR(c, ref, 1e-8 * ref);
}

TEST(RoundRobin, LoneUserHarvestsNothing) {
  const auto a = RoundRobinAnalysis(SingleRayleighUser(5.0));
  EXPECT_EQ(a.harvest[0], 0.0);
  EXPECT_DOUBLE_EQ(a.capacity[0], FullAccessCapacity(SingleRayleighUser(5.0), 0));
}

TEST(RoundRobin, ZeroEfficiencyHarvestsNothing) {
  auto s = SevenUserScenario();
  s.eta = 0.0;
  for (double h : RoundRobinAnalysis(s).harvest) EXPECT_EQ(h, 0.0);
}

TEST(RoundRobin, BestUserHarvestByArithmetic) {
  const auto a = RoundRobinAnalysis(SevenUserScenario());
  EXPECT_NEAR(a.harvest[6], 0.5 * 1.0 * 7e-5 * 6.0 / 7.0, 1e-18);
  EXPECT_NEAR(a.harvest[6], 3.0e-5, 1e-18);
}

TEST(NsnrCapacity, SingleUserIsFullAccess) {
  for (double snr : {0.5, 20.0}) {
    EXPECT_NEAR(NsnrCapacity(SingleRayleighUser(snr), 1, 0),
                FullAccessCapacity(SingleRayleighUser(snr), 0), 1e-14);
  }
}

TEST(NsnrCapacity, ClosedFormMatchesIndependentQuadrature) {
  const auto s = RayleighUsers(4, 100.0);
  for (int j = 1; j <= 4; ++j) {
    const double ref = IntegrateToInfinity([j](double x) {
                         return std::log2(1.0 + 100.0 * x) * RayleighOrderedPdf(4, j, x);
                       }) / 4.0;
    EXPECT_NEAR(NsnrCapacity(s, j, 0), ref, 1e-6 * ref) << j;
  }
}

TEST(NsnrCapacity, ClosedFormMatchesLibraryQuadratureOnGrid) {
  for (double snr : {1.0, 1e2, 1e7}) {
    for (int n = 1; n <= 8; ++n) {
      for (int j = 1; j <= n; ++j) {
        const auto closed = RayleighNsnrCapacityClosedForm(n, j, snr);
        const double quad = NsnrCapacityQuadrature(n, j, 0.0, snr);
        EXPECT_LT(closed.cancellation, kCancellationLimit);
        EXPECT_NEAR(closed.value, quad, 1e-6 * quad) << n << "," << j << "," << snr;
      }
    }
  }
}

TEST(NsnrCapacity, CancellationFallsBackToQuadrature) {
  const auto closed = RayleighNsnrCapacityClosedForm(60, 30, 1e3);
  EXPECT_GT(closed.cancellation, kCancellationLimit);
  const auto s = RayleighUsers(60, 1e3);
  const double quad = NsnrCapacityQuadrature(60, 30, 0.0, 1e3);
  EXPECT_NEAR(NsnrCapacity(s, 30, 0), quad, 1e-12 * quad);
  EXPECT_FALSE(NsnrAnalysis(s, 30).warnings.empty());
  EXPECT_TRUE(NsnrAnalysis(s, 1).warnings.empty());
}

TEST(NsnrCapacity, MixtureIdentity) {
  for (double k : {0.0, 6.0}) {
    auto s = SevenUserScenario();
    for (auto& u : s.users) u.k_factor = k;
    for (std::size_t n = 0; n < s.NumUsers(); ++n) {
      double sum = 0.0;
      for (int j = 1; j <= 7; ++j) sum += NsnrCapacity(s, j, n);
      EXPECT_NEAR(sum, FullAccessCapacity(s, n), 1e-7) << k << "," << n;
    }
  }
}

TEST(NsnrCapacity, RequiresSharedK) {
  auto s = SevenUserScenario();
  s.users[2].k_factor = 1.0;
  EXPECT_THROW(NsnrCapacity(s, 1, 0), DomainError);
  EXPECT_NO_THROW(RoundRobinAnalysis(s));
}

TEST(NsnrHarvest, LoneUserHarvestsNothing) {
  EXPECT_NEAR(NsnrHarvest(SingleRayleighUser(3.0), 1, 0), 0.0, 1e-18);
}

TEST(NsnrHarvest, HarmonicSumArithmetic) {
  Scenario s = RayleighUsers(7, 1.0);
  for (auto& u : s.users) u.omega = 1e-5;
  const double h7 = 1.0 + 1.0 / 2 + 1.0 / 3 + 1.0 / 4 + 1.0 / 5 + 1.0 / 6 + 1.0 / 7;
  const double expected = 0.5e-5 * (1.0 - h7 / 7.0);
  EXPECT_NEAR(NsnrHarvest(s, 7, 0), expected, 1e-8 * expected);
  const double mean_top =
      IntegrateToInfinity([](double x) { return x * RayleighOrderedPdf(7, 7, x); });
  EXPECT_NEAR(NsnrHarvest(s, 7, 0), 0.5e-5 * (1.0 - mean_top / 7.0), 1e-8 * expected);
  EXPECT_NEAR(NsnrHarvestQuadrature(s, 7, 0), expected, 1e-8 * expected);
}

TEST(NsnrHarvest, ClosedFormMatchesQuadratureOnGrid) {
  for (int n = 1; n <= 8; ++n) {
    Scenario s = RayleighUsers(n, 1e2);
    for (int j = 1; j <= n; ++j) {
      const double closed = NsnrHarvest(s, j, 0);
      const double quad = NsnrHarvestQuadrature(s, j, 0);
      EXPECT_NEAR(closed, quad, 1e-6 * std::max(quad, 1e-300) + 1e-15) << n << "," << j;
    }
  }
}

TEST(Nsnr, MonotoneInOrder) {
  for (double k : {0.0, 6.0}) {
    auto s = SevenUserScenario();
    for (auto& u : s.users) u.k_factor = k;
    for (std::size_t n = 0; n < 7; ++n) {
      for (int j = 1; j < 7; ++j) {
        EXPECT_LT(NsnrCapacity(s, j, n), NsnrCapacity(s, j + 1, n));
        EXPECT_GT(NsnrHarvest(s, j, n), NsnrHarvest(s, j + 1, n));
      }
    }
  }
}

TEST(EtProbabilities, IdenticalUsersAreUniform) {
  const auto s = IdenticalUsers(5, 6.0);
  for (const auto& set : {AllowedOrderSet({1, 2}), AllowedOrderSet({5}),
                          AllowedOrderSet::All(5)}) {
    for (double p : EtProbabilities(s, set)) EXPECT_NEAR(p, 0.2, 1e-14);
  }
}

TEST(EtProbabilities, ReferenceFeasibleInstance) {
  const auto p = EtProbabilities(WeakPairScenario(1e-10), AllowedOrderSet({3, 4}));
  const std::vector<double> expected{0.0884, 0.0884, 0.4116, 0.4116};
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(p[n], expected[n], 1e-4) << n;
}

TEST(EtProbabilities, ReferenceInfeasibleInstance) {
  const auto p = EtProbabilities(WeakPairScenario(1e-11), AllowedOrderSet({3, 4}));
  const std::vector<double> expected{0.0603, 0.0603, 0.4397, 0.4397};
  for (int n = 0; n < 4; ++n) EXPECT_NEAR(p[n], expected[n], 1e-4) << n;
}

TEST(EtProbabilities, SumToOne) {
  for (const auto& set : {AllowedOrderSet({1, 2}), AllowedOrderSet({3, 4}),
                          AllowedOrderSet({6, 7}), AllowedOrderSet({2, 5, 7})}) {
    const auto p = EtProbabilities(SevenUserScenario(), set);
    EXPECT_NEAR(std::accumulate(p.begin(), p.end(), 0.0), 1.0, 1e-12);
    for (double v : p) EXPECT_GT(v, 0.0);
  }
}

TEST(EtThroughput, EqualizesEveryUser) {
  const auto s = SevenUserScenario();
  for (const auto& set : {AllowedOrderSet({1, 2}), AllowedOrderSet({6, 7}),
                          AllowedOrderSet({1, 4, 7})}) {
    const auto p = EtProbabilities(s, set);
    const double r = EtThroughput(s, set);
    for (std::size_t n = 0; n < 7; ++n) {
      double sum = 0.0;
      for (int j : set.orders()) sum += NsnrCapacity(s, j, n);
      EXPECT_NEAR(7.0 / set.size() * sum * p[n], r, 1e-10 * r) << n;
    }
  }
}

TEST(EtThroughput, IdenticalUsersGetCommonValue) {
  const auto s = IdenticalUsers(4, 6.0);
  const AllowedOrderSet set({2, 3});
  const double per_user = (NsnrCapacity(s, 2, 0) + NsnrCapacity(s, 3, 0)) / 2.0;
  EXPECT_NEAR(EtThroughput(s, set), per_user, 1e-12);
}

TEST(EtThroughput, FullSetBetweenExtremeOrders) {
  const auto s = SevenUserScenario();
  double low = 0.0, high = 0.0;
  for (std::size_t n = 0; n < 7; ++n) {
    low += NsnrCapacity(s, 1, n);
    high += NsnrCapacity(s, 7, n);
  }
  const double total = 7.0 * EtThroughput(s, AllowedOrderSet::All(7));
  EXPECT_GT(total, low);
  EXPECT_LT(total, high);
}

TEST(EtHarvest, FullSetOnIdenticalUsersMatchesRoundRobin) {
  const auto s = IdenticalUsers(6, 6.0);
  const auto rr = RoundRobinAnalysis(s);
  for (std::size_t n = 0; n < 6; ++n) {
    EXPECT_NEAR(EtHarvest(s, AllowedOrderSet::All(6), 1.0 / 6.0, n), rr.harvest[n],
                1e-9 * rr.harvest[n]);
  }
}

TEST(EtHarvest, ZeroEfficiency) {
  auto s = SevenUserScenario();
  s.eta = 0.0;
  EXPECT_EQ(EtHarvest(s, AllowedOrderSet({1, 2}), 0.14, 3), 0.0);
}

TEST(Analysis, OrderSweepCardinalityAndSandwich) {
  const auto s = SevenUserScenario();
  std::vector<SchedulerAnalysis> sweep;
  for (int j = 1; j <= 7; ++j) sweep.push_back(NsnrAnalysis(s, j));
  ASSERT_EQ(sweep.size(), 7u);
  const auto rr = RoundRobinAnalysis(s);
  for (std::size_t n = 0; n < 7; ++n) {
    EXPECT_GT(rr.capacity[n], sweep.front().capacity[n]);
    EXPECT_LT(rr.capacity[n], sweep.back().capacity[n]);
    EXPECT_LT(rr.harvest[n], sweep.front().harvest[n]);
    EXPECT_GT(rr.harvest[n], sweep.back().harvest[n]);
  }
}

TEST(Analysis, HarvestWithinPhysicalBounds) {
  auto s = SevenUserScenario();
  std::vector<SchedulerAnalysis> all{RoundRobinAnalysis(s)};
  for (int j = 1; j <= 7; ++j) all.push_back(NsnrAnalysis(s, j));
  for (const auto& set : {AllowedOrderSet({1, 2}), AllowedOrderSet({3, 4}),
                          AllowedOrderSet({6, 7}), AllowedOrderSet::All(7)}) {
    auto et = EtAnalyze(s, set);
    ASSERT_TRUE(et.analysis.has_value());
    all.push_back(*et.analysis);
  }
  for (const auto& a : all) {
    for (std::size_t n = 0; n < 7; ++n) {
      EXPECT_GE(a.harvest[n], 0.0) << a.policy;
      EXPECT_LE(a.harvest[n], s.eta * s.tx_power_w * s.users[n].omega) << a.policy;
      EXPECT_GE(a.capacity[n], 0.0) << a.policy;
    }
  }
}

TEST(Analysis, InfeasibleEtReturnsDiagnostic) {
  const auto et = EtAnalyze(WeakPairScenario(1e-11), AllowedOrderSet({3, 4}));
  EXPECT_FALSE(et.solution.feasible);
  EXPECT_FALSE(et.solution.violations.empty());
  EXPECT_FALSE(et.analysis.has_value());
  EXPECT_EQ(et.solution.probabilities.size(), 4u);
}

TEST(Analysis, ReferenceSetsAreFeasible) {
  for (const auto& set :
       {AllowedOrderSet({1, 2}), AllowedOrderSet({3, 4}), AllowedOrderSet({6, 7})}) {
    const auto sol = SolveEt(SevenUserScenario(), set);
    EXPECT_TRUE(sol.feasible) << set.ToString();
    EXPECT_TRUE(sol.violations.empty());
  }
}

}  // namespace
}  // namespace swipt
