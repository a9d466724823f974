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

#include "swipt/sim.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "swipt/errors.h"
#include "swipt/orderstats.h"

namespace swipt {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

// Running mean and variance (Welford).
class RunningStats {
 public:
  void Add(double x) {
    ++count_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(count_);
    m2_ += delta * (x - mean_);
  }
  double mean() const { return mean_; }
  double StandardError() const {
    if (count_ < 2) return 0.0;
    const double var = m2_ / static_cast<double>(count_ - 1);
    return std::sqrt(var / static_cast<double>(count_));
  }

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

double BetaAt(const BetaSchedule& schedule, std::uint64_t slot) {
  return std::visit(Overloaded{
                        [&](VanishingStep) { return 1.0 / static_cast<double>(slot + 1); },
                        [](ConstantStep c) { return c.value; },
                    },
                    schedule);
}

}  // namespace

std::string DescribePolicy(const SchedulerPolicy& policy) {
  return std::visit(
      Overloaded{
          [](const RoundRobinPolicy&) { return std::string("rr"); },
          [](const OrderNsnrPolicy& p) { return "nsnr:" + std::to_string(p.order); },
          [](const OrderEtPolicy& p) { return "et:" + p.allowed.ToString(); },
      },
      policy);
}

void ValidatePolicy(const SchedulerPolicy& policy, int n_users) {
  std::visit(Overloaded{
                 [](const RoundRobinPolicy&) {},
                 [&](const OrderNsnrPolicy& p) { OrderSpec{n_users, p.order}.Validate(); },
                 [&](const OrderEtPolicy& p) {
                   p.allowed.ValidateFor(n_users);
                   if (const auto* c = std::get_if<ConstantStep>(&p.beta)) {
                     if (!(c->value > 0.0 && c->value < 1.0)) {
                       throw DomainError("constant beta must lie in (0, 1)");
                     }
                   }
                   if (!(p.initial_throughput >= 0.0) ||
                       !std::isfinite(p.initial_throughput)) {
                     throw DomainError("initial throughput must be finite and >= 0");
                   }
                 },
             },
             policy);
}

std::uint64_t SimConfig::EffectiveWarmup(const SchedulerPolicy& policy) const {
  if (!std::holds_alternative<OrderEtPolicy>(policy)) return 0;
  return warmup_slots.value_or(n_slots / 100);
}

void SimConfig::Validate() const {
  if (n_slots < 1) throw DomainError("SimConfig: n_slots must be >= 1");
  if (warmup_slots && *warmup_slots >= n_slots) {
    throw DomainError("SimConfig: warmup_slots must be < n_slots");
  }
}

std::size_t StepEt(std::span<double> throughputs, std::span<const int> orders,
                   const AllowedOrderSet& allowed, double beta,
                   std::span<const double> rates) {
  std::size_t chosen = throughputs.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n < throughputs.size(); ++n) {
    if (!allowed.Contains(orders[n])) continue;
    if (throughputs[n] < best) {
      best = throughputs[n];
      chosen = n;
    }
  }
  if (chosen == throughputs.size()) {
    throw DomainError("StepEt: no user holds an allowed order");
  }
  for (std::size_t n = 0; n < throughputs.size(); ++n) {
    throughputs[n] *= (1.0 - beta);
  }
  throughputs[chosen] += beta * rates[chosen];
  return chosen;
}

SimResult RunSimulation(const Scenario& scenario, const SchedulerPolicy& policy,
                        const SimConfig& config, const SlotObserver& observer) {
  scenario.Validate();
  config.Validate();
  const std::size_t n_users = scenario.NumUsers();
  ValidatePolicy(policy, static_cast<int>(n_users));

  std::vector<GainSampler> samplers;
  samplers.reserve(n_users);
  for (std::size_t n = 0; n < n_users; ++n) {
    samplers.emplace_back(scenario.users[n], DeriveStreamSeed(config.seed, n));
  }

  const auto* et = std::get_if<OrderEtPolicy>(&policy);
  const auto* nsnr = std::get_if<OrderNsnrPolicy>(&policy);
  const std::uint64_t warmup = config.EffectiveWarmup(policy);
  const double snr_scale = scenario.tx_power_w / scenario.noise_power_w;
  const double harvest_scale = scenario.eta * scenario.tx_power_w;

  std::vector<double> gains(n_users);
  std::vector<double> normalized(n_users);
  std::vector<double> rates(n_users);
  std::vector<double> harvest(n_users);
  std::vector<int> orders(n_users);
  std::vector<double> throughput(n_users, et ? et->initial_throughput : 0.0);
  std::vector<RunningStats> cap_stats(n_users);
  std::vector<RunningStats> harv_stats(n_users);
  std::vector<std::uint64_t> scheduled_count(n_users, 0);

  for (std::uint64_t t = 0; t < config.n_slots; ++t) {
    for (std::size_t n = 0; n < n_users; ++n) {
      gains[n] = samplers[n]();
      rates[n] = std::log1p(snr_scale * gains[n]) / std::numbers::ln2;
    }

    std::size_t chosen = 0;
    if (nsnr != nullptr || et != nullptr) {
      for (std::size_t n = 0; n < n_users; ++n) {
        normalized[n] = gains[n] / scenario.users[n].omega;
      }
    }
    if (et != nullptr) {
      orders = OrdersOfUsers(normalized);
      chosen = StepEt(throughput, orders, et->allowed, BetaAt(et->beta, t), rates);
    } else if (nsnr != nullptr) {
      chosen = RankOfUsers(normalized)[nsnr->order - 1];
    } else {
      chosen = static_cast<std::size_t>(t % n_users);
    }

    for (std::size_t n = 0; n < n_users; ++n) {
      harvest[n] = (n == chosen) ? 0.0 : harvest_scale * gains[n];
    }
    if (observer) observer({t, chosen, gains, rates, harvest});
    if (t < warmup) continue;

    ++scheduled_count[chosen];
    for (std::size_t n = 0; n < n_users; ++n) {
      cap_stats[n].Add(n == chosen ? rates[n] : 0.0);
      harv_stats[n].Add(harvest[n]);
    }
  }

  SimResult out;
  out.policy = DescribePolicy(policy);
  out.is_et = et != nullptr;
  out.averaged_slots = config.n_slots - warmup;
  for (std::size_t n = 0; n < n_users; ++n) {
    out.capacity_mean.push_back(cap_stats[n].mean());
    out.capacity_stderr.push_back(cap_stats[n].StandardError());
    out.harvest_mean.push_back(harv_stats[n].mean());
    out.harvest_stderr.push_back(harv_stats[n].StandardError());
    out.schedule_frequency.push_back(static_cast<double>(scheduled_count[n]) /
                                     static_cast<double>(out.averaged_slots));
  }
  if (et != nullptr) out.final_moving_throughput = throughput;
  return out;
}

ConvergenceReport MakeConvergenceReport(const SimResult& result,
                                        std::optional<double> analytic_throughput) {
  if (!result.is_et) {
    throw UsageError("convergence report is only defined for ET results, got " +
                     result.policy);
  }
  ConvergenceReport report;
  double sum = 0.0;
  for (double c : result.capacity_mean) sum += c;
  report.mean_capacity = sum / static_cast<double>(result.capacity_mean.size());
  for (double c : result.capacity_mean) {
    report.max_relative_spread =
        std::max(report.max_relative_spread,
                 std::fabs(c - report.mean_capacity) / report.mean_capacity);
  }
  if (analytic_throughput) {
    report.relative_gap_to_analytic =
        (report.mean_capacity - *analytic_throughput) / *analytic_throughput;
  }
  return report;
}

}  // namespace swipt
