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
#include <cmath>
#include <bit>
#include <cstdint>
#include <numeric>
#include <string>

#include "swipt/errors.h"
#include "swipt/orderstats.h"

namespace swipt {
namespace {

void ValidateProbabilities(std::span<const double> p, int allowed_size) {
  if (p.empty()) throw DomainError("feasibility: empty probability vector");
  double sum = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0) {
      throw DomainError("feasibility: probabilities must be finite and >= 0");
    }
    sum += v;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw DomainError("feasibility: probabilities must sum to 1");
  }
  const int n = static_cast<int>(p.size());
  if (allowed_size < 1 || allowed_size > n) {
    throw DomainError("feasibility: |S_a| must lie in 1.." + std::to_string(n));
  }
}

void CheckIndividualLimits(std::span<const double> p, int allowed_size,
                           FeasibilityReport& report) {
  const int n = static_cast<int>(p.size());
  const double limit = static_cast<double>(allowed_size) / n;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > limit + kFeasibilitySlack) {
      report.violations.push_back({1, 1, {i}, p[i], limit});
    }
  }
}

}  // namespace

std::optional<int> FeasibilityReport::MinViolatedSubsetSize() const {
  std::optional<int> best;
  for (const auto& v : violations) {
    if (v.condition == 2 && (!best || v.subset_size < *best)) best = v.subset_size;
  }
  return best;
}

bool FeasibilityReport::ViolatesIndividualLimit() const {
  return std::any_of(violations.begin(), violations.end(),
                     [](const auto& v) { return v.condition == 1; });
}

double SubsetProbabilityBound(int n_users, int allowed_size, int subset_size) {
  const int s = allowed_size;
  // C(N-1, s-1) / C(N, s) = s / N.
  const double linear = static_cast<double>(s) * subset_size / n_users;
  if (subset_size < s || s == 1) return linear;
  const double ratio =
      std::exp(LogBinomial(subset_size, s) - LogBinomial(n_users, s));
  return linear - ratio * (s - 1);
}

FeasibilityReport CheckEtFeasibility(std::span<const double> p, int allowed_size) {
  ValidateProbabilities(p, allowed_size);
  FeasibilityReport report;
  CheckIndividualLimits(p, allowed_size, report);

  const int n = static_cast<int>(p.size());
  std::vector<std::size_t> by_prob(p.size());
  std::iota(by_prob.begin(), by_prob.end(), std::size_t{0});
  std::stable_sort(by_prob.begin(), by_prob.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });

  double prefix = 0.0;
  for (int l = 1; l <= n; ++l) {
    prefix += p[by_prob[l - 1]];
    if (l < allowed_size) continue;
    const double bound = SubsetProbabilityBound(n, allowed_size, l);
    if (prefix > bound + kFeasibilitySlack) {
      std::vector<std::size_t> witness(by_prob.begin(), by_prob.begin() + l);
      std::sort(witness.begin(), witness.end());
      report.violations.push_back({2, l, std::move(witness), prefix, bound});
    }
  }
  report.feasible = report.violations.empty();
  return report;
}

FeasibilityReport CheckEtFeasibilityExhaustive(std::span<const double> p,
                                               int allowed_size) {
  if (p.size() > static_cast<std::size_t>(kExhaustiveFeasibilityMaxUsers)) {
    throw SizeError("exhaustive feasibility check is limited to N <= 20");
  }
  ValidateProbabilities(p, allowed_size);
  FeasibilityReport report;
  CheckIndividualLimits(p, allowed_size, report);

  const int n = static_cast<int>(p.size());
  std::vector<double> bounds(n + 1, 0.0);
  for (int l = allowed_size; l <= n; ++l) {
    bounds[l] = SubsetProbabilityBound(n, allowed_size, l);
  }
  // Every nonempty subset as a bitmask; condition 2 applies when its size is
  // at least |S_a|.
  const std::uint32_t full = (std::uint32_t{1} << n);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const int l = std::popcount(mask);
    if (l < allowed_size) continue;
    double sum = 0.0;
    std::vector<std::size_t> members;
    members.reserve(l);
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) {
        sum += p[i];
        members.push_back(static_cast<std::size_t>(i));
      }
    }
    if (sum > bounds[l] + kFeasibilitySlack) {
      report.violations.push_back({2, l, std::move(members), sum, bounds[l]});
    }
  }
  report.feasible = report.violations.empty();
  return report;
}

}  // namespace swipt
