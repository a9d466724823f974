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

#ifndef SWIPT_ANALYTIC_H_
#define SWIPT_ANALYTIC_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "swipt/channel.h"
#include "swipt/feasibility.h"
#include "swipt/quadrature.h"

namespace swipt {

// Sorted, duplicate-free set of N-SNR orders S_a that may be scheduled by
// order-based ET. Orders are 1-based.
class AllowedOrderSet {
 public:
  // Sorts and deduplicates; throws DomainError if empty or any order < 1.
  explicit AllowedOrderSet(std::vector<int> orders);

  // All orders 1..n.
  static AllowedOrderSet All(int n_users);

  const std::vector<int>& orders() const { return orders_; }
  int size() const { return static_cast<int>(orders_.size()); }
  bool Contains(int order) const;
  int max() const { return orders_.back(); }

  // Throws DomainError if max() > n_users.
  void ValidateFor(int n_users) const;

  // Orders of 1..n_users not in the set.
  std::vector<int> Complement(int n_users) const;

  // Compact form: runs become "a-b", joined by commas ("1-2", "1,3,5").
  std::string ToString() const;

  friend bool operator==(const AllowedOrderSet&, const AllowedOrderSet&) = default;

 private:
  std::vector<int> orders_;
};

// One rate-energy point per user for one scheduling policy.
struct SchedulerAnalysis {
  std::string policy;
  std::vector<double> capacity;              // bits/s/Hz
  std::vector<double> harvest;               // W per unit-length slot
  std::vector<double> schedule_probability;  // Pr(user is scheduled)
  std::vector<std::string> warnings;
};

struct EtSolution {
  double equal_throughput = 0.0;      // r, bits/s/Hz
  std::vector<double> probabilities;  // p_n
  bool feasible = false;
  std::vector<FeasibilityViolation> violations;
};

struct EtAnalysis {
  EtSolution solution;
  // Present only when the allowed set is ET-feasible; an infeasible point is
  // reported through `solution` rather than as an exception.
  std::optional<SchedulerAnalysis> analysis;
};

// Ergodic capacity of a user holding the channel in every slot. Rayleigh:
// e^{1/g} E1(1/g) / ln 2; Ricean: quadrature of log2(1 + g x) f_X(x).
double FullAccessCapacity(const Scenario& scenario, std::size_t user);

// Round robin: capacity C_f / N, harvest (1 - 1/N) eta P Omega.
SchedulerAnalysis RoundRobinAnalysis(const Scenario& scenario);

// Capacity of `user` under order-based N-SNR scheduling with order j:
// (1/N) int log2(1 + g x) f_(j)(x) dx. Requires a shared K. Rayleigh uses
// the finite alternating sum, falling back to quadrature when it cancels.
double NsnrCapacity(const Scenario& scenario, int order, std::size_t user);

// eta P Omega (1 - E[X_(j)] / N).
double NsnrHarvest(const Scenario& scenario, int order, std::size_t user);

SchedulerAnalysis NsnrAnalysis(const Scenario& scenario, int order);

// Scheduling probabilities that equalize long-term throughput:
// p_n proportional to 1 / sum_{j in S_a} E[C_{j,n}], normalized to 1.
std::vector<double> EtProbabilities(const Scenario& scenario,
                                    const AllowedOrderSet& allowed);

// Harmonic mean over users of the per-user mean N-SNR capacity over S_a.
double EtThroughput(const Scenario& scenario, const AllowedOrderSet& allowed);

// eta P Omega [1 - (p_n / |S_a|) sum_{j in S_a} E[X_(j)]].
double EtHarvest(const Scenario& scenario, const AllowedOrderSet& allowed,
                 double probability, std::size_t user);

EtSolution SolveEt(const Scenario& scenario, const AllowedOrderSet& allowed);

EtAnalysis EtAnalyze(const Scenario& scenario, const AllowedOrderSet& allowed);

// Rayleigh closed form of the N-SNR capacity with the magnitude of its
// cancellation: sum |terms| / |sum|.
struct ClosedFormValue {
  double value = 0.0;
  double cancellation = 1.0;
};
ClosedFormValue RayleighNsnrCapacityClosedForm(int n_users, int order,
                                               double average_snr);

// Above this cancellation ratio the closed form is not trusted.
inline constexpr double kCancellationLimit = 1e6;

// Numerical routes, used as fallbacks and as test oracles.
double FullAccessCapacityQuadrature(double k_factor, double average_snr,
                                    const QuadratureSpec& quad = {});
double NsnrCapacityQuadrature(int n_users, int order, double k_factor,
                              double average_snr,
                              const QuadratureSpec& quad = {});
// eta P Omega int x (f_X(x) - f_(j)(x) / N) dx.
double NsnrHarvestQuadrature(const Scenario& scenario, int order,
                             std::size_t user, const QuadratureSpec& quad = {});

}  // namespace swipt

#endif  // SWIPT_ANALYTIC_H_
