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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "swipt/errors.h"
#include "swipt/orderstats.h"
#include "swipt/specfun.h"

namespace swipt {
namespace {

constexpr double kLn2 = std::numbers::ln2;

void RequireUser(const Scenario& scenario, std::size_t user) {
  if (user >= scenario.NumUsers()) {
    throw DomainError("user index " + std::to_string(user + 1) +
                      " outside 1.." + std::to_string(scenario.NumUsers()));
  }
}

void RequireOrder(const Scenario& scenario, int order) {
  OrderSpec{static_cast<int>(scenario.NumUsers()), order}.Validate();
}

double Log2OnePlus(double snr, double x) { return std::log1p(snr * x) / kLn2; }

struct NsnrCapacityValue {
  double value;
  bool fell_back;
};

NsnrCapacityValue NsnrCapacityDetailed(const Scenario& scenario, int order,
                                       std::size_t user) {
  RequireUser(scenario, user);
  RequireOrder(scenario, order);
  const double k = scenario.RequireSharedKFactor();
  const int n = static_cast<int>(scenario.NumUsers());
  const double snr = scenario.AverageSnr(user);
  if (k == 0.0) {
    const auto closed = RayleighNsnrCapacityClosedForm(n, order, snr);
    if (closed.cancellation <= kCancellationLimit) return {closed.value, false};
    return {NsnrCapacityQuadrature(n, order, k, snr), true};
  }
  return {NsnrCapacityQuadrature(n, order, k, snr), false};
}

// sum_{j in S_a} E[C_{j,n}] for every user.
std::vector<double> AllowedCapacitySums(const Scenario& scenario,
                                        const AllowedOrderSet& allowed) {
  scenario.Validate();
  allowed.ValidateFor(static_cast<int>(scenario.NumUsers()));
  std::vector<double> sums(scenario.NumUsers(), 0.0);
  for (std::size_t n = 0; n < sums.size(); ++n) {
    for (int j : allowed.orders()) sums[n] += NsnrCapacity(scenario, j, n);
  }
  return sums;
}

std::vector<double> ProbabilitiesFromSums(const std::vector<double>& sums) {
  double inv_total = 0.0;
  for (double a : sums) inv_total += 1.0 / a;
  std::vector<double> p(sums.size());
  for (std::size_t n = 0; n < sums.size(); ++n) p[n] = (1.0 / sums[n]) / inv_total;
  return p;
}

double ThroughputFromSums(const std::vector<double>& sums, int allowed_size) {
  double inv_total = 0.0;
  for (double a : sums) inv_total += allowed_size / a;
  return static_cast<double>(sums.size()) / inv_total;
}

}  // namespace

AllowedOrderSet::AllowedOrderSet(std::vector<int> orders) : orders_(std::move(orders)) {
  std::sort(orders_.begin(), orders_.end());
  orders_.erase(std::unique(orders_.begin(), orders_.end()), orders_.end());
  if (orders_.empty()) throw DomainError("allowed order set must be nonempty");
  if (orders_.front() < 1) throw DomainError("allowed orders start at 1");
}

AllowedOrderSet AllowedOrderSet::All(int n_users) {
  std::vector<int> all(std::max(n_users, 0));
  for (int j = 0; j < n_users; ++j) all[j] = j + 1;
  return AllowedOrderSet(std::move(all));
}

bool AllowedOrderSet::Contains(int order) const {
  return std::binary_search(orders_.begin(), orders_.end(), order);
}

void AllowedOrderSet::ValidateFor(int n_users) const {
  if (max() > n_users) {
    throw DomainError("allowed order " + std::to_string(max()) +
                      " exceeds the number of users " + std::to_string(n_users));
  }
}

std::vector<int> AllowedOrderSet::Complement(int n_users) const {
  std::vector<int> out;
  for (int j = 1; j <= n_users; ++j) {
    if (!Contains(j)) out.push_back(j);
  }
  return out;
}

std::string AllowedOrderSet::ToString() const {
  std::ostringstream os;
  std::size_t i = 0;
  while (i < orders_.size()) {
    std::size_t k = i;
    while (k + 1 < orders_.size() && orders_[k + 1] == orders_[k] + 1) ++k;
    if (i > 0) os << ',';
    os << orders_[i];
    if (k > i) os << '-' << orders_[k];
    i = k + 1;
  }
  return os.str();
}

ClosedFormValue RayleighNsnrCapacityClosedForm(int n_users, int order,
                                               double average_snr) {
  OrderSpec{n_users, order}.Validate();
  if (!(average_snr > 0.0) || !std::isfinite(average_snr)) {
    throw DomainError("average SNR must be finite and > 0");
  }
  // C(N-1, j-1)/ln2 * sum_l (-1)^l C(j-1, l)/m e^{m/g} E1(m/g),
  // m = N - j + l + 1.
  long double sum = 0.0L;
  long double magnitude = 0.0L;
  for (int l = 0; l < order; ++l) {
    const int m = n_users - order + l + 1;
    const long double term = static_cast<long double>(Binomial(order - 1, l)) / m *
                             ExpScaledE1(m / average_snr);
    sum += (l % 2 == 0) ? term : -term;
    magnitude += term;
  }
  const long double scale = Binomial(n_users - 1, order - 1) / kLn2;
  ClosedFormValue out;
  out.value = static_cast<double>(scale * sum);
  out.cancellation = sum != 0.0L ? static_cast<double>(magnitude / std::fabs(sum))
                                 : INFINITY;
  return out;
}

double FullAccessCapacityQuadrature(double k_factor, double average_snr,
                                    const QuadratureSpec& quad) {
  return IntegrateSemiInfinite(
             [&](double x) {
               return Log2OnePlus(average_snr, x) * NormalizedPdf(k_factor, x);
             },
             [&](double x) { return NormalizedSurvival(k_factor, x); }, quad)
      .value;
}

double NsnrCapacityQuadrature(int n_users, int order, double k_factor,
                              double average_snr, const QuadratureSpec& quad) {
  const OrderSpec spec{n_users, order};
  spec.Validate();
  const double integral =
      IntegrateSemiInfinite(
          [&](double x) {
            return Log2OnePlus(average_snr, x) * OrderedPdf(spec, k_factor, x);
          },
          [&](double x) { return MaxOrderTail(n_users, k_factor, x); }, quad)
          .value;
  return integral / n_users;
}

double NsnrHarvestQuadrature(const Scenario& scenario, int order,
                             std::size_t user, const QuadratureSpec& quad) {
  RequireUser(scenario, user);
  RequireOrder(scenario, order);
  const double k = scenario.RequireSharedKFactor();
  const int n = static_cast<int>(scenario.NumUsers());
  const OrderSpec spec{n, order};
  const double integral =
      IntegrateSemiInfinite(
          [&](double x) {
            return x * (NormalizedPdf(k, x) - OrderedPdf(spec, k, x) / n);
          },
          [&](double x) { return MaxOrderTail(n, k, x); }, quad)
          .value;
  const auto& u = scenario.users[user];
  return scenario.eta * scenario.tx_power_w * u.omega * integral;
}

double FullAccessCapacity(const Scenario& scenario, std::size_t user) {
  RequireUser(scenario, user);
  const double snr = scenario.AverageSnr(user);
  const double k = scenario.users[user].k_factor;
  if (k == 0.0) return ExpScaledE1(1.0 / snr) / kLn2;
  return FullAccessCapacityQuadrature(k, snr);
}

SchedulerAnalysis RoundRobinAnalysis(const Scenario& scenario) {
  scenario.Validate();
  const std::size_t n = scenario.NumUsers();
  SchedulerAnalysis out;
  out.policy = "rr";
  out.capacity.resize(n);
  out.harvest.resize(n);
  out.schedule_probability.assign(n, 1.0 / n);
  for (std::size_t u = 0; u < n; ++u) {
    out.capacity[u] = FullAccessCapacity(scenario, u) / n;
    out.harvest[u] = (1.0 - 1.0 / n) * scenario.eta * scenario.tx_power_w *
                     scenario.users[u].omega;
  }
  return out;
}

double NsnrCapacity(const Scenario& scenario, int order, std::size_t user) {
  return NsnrCapacityDetailed(scenario, order, user).value;
}

double NsnrHarvest(const Scenario& scenario, int order, std::size_t user) {
  RequireUser(scenario, user);
  const int n = static_cast<int>(scenario.NumUsers());
  const double k = scenario.RequireSharedKFactor();
  const double expected = ExpectedOrderedGain(OrderSpec{n, order}, k);
  return scenario.eta * scenario.tx_power_w * scenario.users[user].omega *
         (1.0 - expected / n);
}

SchedulerAnalysis NsnrAnalysis(const Scenario& scenario, int order) {
  scenario.Validate();
  RequireOrder(scenario, order);
  const std::size_t n = scenario.NumUsers();
  SchedulerAnalysis out;
  out.policy = "nsnr:" + std::to_string(order);
  out.capacity.resize(n);
  out.harvest.resize(n);
  out.schedule_probability.assign(n, 1.0 / n);
  for (std::size_t u = 0; u < n; ++u) {
    const auto cap = NsnrCapacityDetailed(scenario, order, u);
    if (cap.fell_back) {
      out.warnings.push_back("user " + std::to_string(u + 1) +
                             ": closed form cancels, used quadrature");
    }
    out.capacity[u] = cap.value;
    out.harvest[u] = NsnrHarvest(scenario, order, u);
  }
  return out;
}

std::vector<double> EtProbabilities(const Scenario& scenario,
                                    const AllowedOrderSet& allowed) {
  return ProbabilitiesFromSums(AllowedCapacitySums(scenario, allowed));
}

double EtThroughput(const Scenario& scenario, const AllowedOrderSet& allowed) {
  return ThroughputFromSums(AllowedCapacitySums(scenario, allowed), allowed.size());
}

double EtHarvest(const Scenario& scenario, const AllowedOrderSet& allowed,
                 double probability, std::size_t user) {
  RequireUser(scenario, user);
  const int n = static_cast<int>(scenario.NumUsers());
  allowed.ValidateFor(n);
  const double k = scenario.RequireSharedKFactor();
  double expected_sum = 0.0;
  for (int j : allowed.orders()) expected_sum += ExpectedOrderedGain({n, j}, k);
  return scenario.eta * scenario.tx_power_w * scenario.users[user].omega *
         (1.0 - probability / allowed.size() * expected_sum);
}

EtSolution SolveEt(const Scenario& scenario, const AllowedOrderSet& allowed) {
  const auto sums = AllowedCapacitySums(scenario, allowed);
  EtSolution sol;
  sol.probabilities = ProbabilitiesFromSums(sums);
  sol.equal_throughput = ThroughputFromSums(sums, allowed.size());
  auto report = CheckEtFeasibility(sol.probabilities, allowed.size());
  sol.feasible = report.feasible;
  sol.violations = std::move(report.violations);
  return sol;
}

EtAnalysis EtAnalyze(const Scenario& scenario, const AllowedOrderSet& allowed) {
  EtAnalysis out;
  out.solution = SolveEt(scenario, allowed);
  if (!out.solution.feasible) return out;
  const std::size_t n = scenario.NumUsers();
  SchedulerAnalysis a;
  a.policy = "et:" + allowed.ToString();
  a.capacity.assign(n, out.solution.equal_throughput);
  a.schedule_probability = out.solution.probabilities;
  a.harvest.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    a.harvest[u] = EtHarvest(scenario, allowed, out.solution.probabilities[u], u);
  }
  out.analysis = std::move(a);
  return out;
}

}  // namespace swipt
