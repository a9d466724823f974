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

#ifndef SWIPT_SIM_H_
#define SWIPT_SIM_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "swipt/analytic.h"
#include "swipt/channel.h"

namespace swipt {

// beta_t = 1 / t, the asymptotically vanishing smoothing factor.
struct VanishingStep {};
// Fixed smoothing factor in (0, 1).
struct ConstantStep {
  double value = 0.01;
};
using BetaSchedule = std::variant<VanishingStep, ConstantStep>;

struct RoundRobinPolicy {};

struct OrderNsnrPolicy {
  int order = 1;  // ascending N-SNR rank to schedule
};

struct OrderEtPolicy {
  AllowedOrderSet allowed;
  BetaSchedule beta = VanishingStep{};
  double initial_throughput = 0.0;  // r_n(0) for every user
};

using SchedulerPolicy =
    std::variant<RoundRobinPolicy, OrderNsnrPolicy, OrderEtPolicy>;

// "rr", "nsnr:j", "et:<orders>".
std::string DescribePolicy(const SchedulerPolicy& policy);

// Throws DomainError on an order outside 1..n_users, a constant beta outside
// (0, 1) or a negative initial throughput.
void ValidatePolicy(const SchedulerPolicy& policy, int n_users);

struct SimConfig {
  std::uint64_t n_slots = 1'000'000;
  std::uint64_t seed = 1;
  // Leading slots left out of the reported averages (ET only). Defaults to
  // 1% of n_slots when unset.
  std::optional<std::uint64_t> warmup_slots;

  // Warmup actually applied for this policy.
  std::uint64_t EffectiveWarmup(const SchedulerPolicy& policy) const;

  // Throws DomainError unless n_slots >= 1 and warmup < n_slots.
  void Validate() const;
};

struct SimResult {
  std::string policy;
  bool is_et = false;
  std::uint64_t averaged_slots = 0;
  std::vector<double> capacity_mean;        // bits/s/Hz
  std::vector<double> capacity_stderr;
  std::vector<double> harvest_mean;         // W per unit-length slot
  std::vector<double> harvest_stderr;
  std::vector<double> schedule_frequency;
  std::vector<double> final_moving_throughput;  // r_n(T), ET only
};

// What happened in one slot; handed to an optional observer.
struct SlotRecord {
  std::uint64_t slot = 0;  // 0-based
  std::size_t scheduled = 0;
  std::span<const double> gains;    // h_n(t)
  std::span<const double> rates;    // C_n(t) = log2(1 + P h_n / sigma^2)
  std::span<const double> harvest;  // eta P h_n for idle users, 0 for n*
};
using SlotObserver = std::function<void(const SlotRecord&)>;

// One ET decision: among users whose current order is in
// `allowed`, pick the smallest moving throughput (lowest index on ties), then
// decay every throughput by (1 - beta) and credit beta * rate to the
// scheduled user. `throughputs` is updated in place.
std::size_t StepEt(std::span<double> throughputs, std::span<const int> orders,
                   const AllowedOrderSet& allowed, double beta,
                   std::span<const double> rates);

// Slot-by-slot Monte Carlo. Each user draws from its own generator seeded
// with DeriveStreamSeed(config.seed, n). Deterministic for fixed inputs.
SimResult RunSimulation(const Scenario& scenario, const SchedulerPolicy& policy,
                        const SimConfig& config,
                        const SlotObserver& observer = nullptr);

struct ConvergenceReport {
  double mean_capacity = 0.0;
  double max_relative_spread = 0.0;  // max_n |C_n - mean| / mean
  // (mean - r) / r against the analytic equal throughput, when supplied.
  std::optional<double> relative_gap_to_analytic;
};

// Throws UsageError for results of non-ET policies.
ConvergenceReport MakeConvergenceReport(
    const SimResult& result, std::optional<double> analytic_throughput = {});

}  // namespace swipt

#endif  // SWIPT_SIM_H_
