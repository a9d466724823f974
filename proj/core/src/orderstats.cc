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

#include "swipt/orderstats.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

#include "swipt/channel.h"
#include "swipt/errors.h"

namespace swipt {
namespace {

constexpr int kMaxExactBinomial = 62;
constexpr int kLogSpaceThreshold = 30;

std::mutex& CacheMutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::tuple<int, int, double>, double>& ExpectedGainCache() {
  static std::map<std::tuple<int, int, double>, double> cache;
  return cache;
}

}  // namespace

void OrderSpec::Validate() const {
  if (n_users < 1 || order < 1 || order > n_users) {
    throw DomainError("OrderSpec: need 1 <= order (" + std::to_string(order) +
                      ") <= n_users (" + std::to_string(n_users) + ")");
  }
}

std::uint64_t BinomialExact(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (n > kMaxExactBinomial) {
    throw SizeError("BinomialExact: n above 62 does not fit in 64 bits");
  }
  k = std::min(k, n - k);
  std::uint64_t acc = 1;
  for (int i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i is integral; divide first so nothing overflows.
    const std::uint64_t step = static_cast<std::uint64_t>(n - k + i);
    const std::uint64_t g = std::gcd(acc, static_cast<std::uint64_t>(i));
    acc = (acc / g) * (step / (static_cast<std::uint64_t>(i) / g));
  }
  return acc;
}

double LogBinomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return -INFINITY;
  if (n <= kMaxExactBinomial) {
    return std::log(static_cast<double>(BinomialExact(n, k)));
  }
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double Binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (n <= kMaxExactBinomial) return static_cast<double>(BinomialExact(n, k));
  return std::exp(LogBinomial(n, k));
}

double OrderedPdf(const OrderSpec& spec, double k_factor, double x) {
  spec.Validate();
  const int n = spec.n_users;
  const int j = spec.order;
  const double f = NormalizedPdf(k_factor, x);
  if (n == 1) return f;
  if (f == 0.0) return 0.0;
  const double cdf = NormalizedCdf(k_factor, x);
  const double sf = NormalizedSurvival(k_factor, x);
  if ((j > 1 && cdf == 0.0) || (j < n && sf == 0.0)) return 0.0;
  if (n > kLogSpaceThreshold) {
    const double log_value = std::log(static_cast<double>(n)) +
                             LogBinomial(n - 1, j - 1) + std::log(f) +
                             (j - 1) * std::log(cdf) + (n - j) * std::log(sf);
    return std::exp(log_value);
  }
  return n * Binomial(n - 1, j - 1) * f * std::pow(cdf, j - 1) *
         std::pow(sf, n - j);
}

double OrderedCdf(const OrderSpec& spec, double k_factor, double x) {
  spec.Validate();
  const int n = spec.n_users;
  const double cdf = NormalizedCdf(k_factor, x);
  const double sf = NormalizedSurvival(k_factor, x);
  double sum = 0.0;
  for (int i = spec.order; i <= n; ++i) {
    sum += Binomial(n, i) * std::pow(cdf, i) * std::pow(sf, n - i);
  }
  return std::min(sum, 1.0);
}

double MaxOrderTail(int n_users, double k_factor, double x) {
  const double sf = NormalizedSurvival(k_factor, x);
  // 1 - (1 - sf)^N without cancellation.
  return -std::expm1(n_users * std::log1p(-sf));
}

namespace internal {

double HarmonicPartialSum(const OrderSpec& spec) {
  spec.Validate();
  double sum = 0.0;
  for (int l = spec.n_users; l >= spec.n_users - spec.order + 1; --l) {
    sum += 1.0 / l;
  }
  return sum;
}

double ExpectedOrderedGainQuadrature(const OrderSpec& spec, double k_factor,
                                     const QuadratureSpec& quad) {
  spec.Validate();
  const int n = spec.n_users;
  return IntegrateSemiInfinite(
             [&](double x) { return x * OrderedPdf(spec, k_factor, x); },
             [&](double x) { return MaxOrderTail(n, k_factor, x); }, quad)
      .value;
}

}  // namespace internal

double ExpectedOrderedGain(const OrderSpec& spec, double k_factor) {
  spec.Validate();
  if (spec.n_users == 1) return 1.0;
  if (k_factor == 0.0) return internal::HarmonicPartialSum(spec);
  const auto key = std::make_tuple(spec.n_users, spec.order, k_factor);
  {
    std::lock_guard<std::mutex> lock(CacheMutex());
    auto it = ExpectedGainCache().find(key);
    if (it != ExpectedGainCache().end()) return it->second;
  }
  const double value = internal::ExpectedOrderedGainQuadrature(spec, k_factor);
  std::lock_guard<std::mutex> lock(CacheMutex());
  ExpectedGainCache().emplace(key, value);
  return value;
}

std::vector<std::size_t> RankOfUsers(std::span<const double> normalized_gains) {
  for (double g : normalized_gains) {
    if (!std::isfinite(g)) throw DomainError("RankOfUsers: non-finite gain");
  }
  std::vector<std::size_t> slots(normalized_gains.size());
  std::iota(slots.begin(), slots.end(), std::size_t{0});
  std::stable_sort(slots.begin(), slots.end(), [&](std::size_t a, std::size_t b) {
    return normalized_gains[a] < normalized_gains[b];
  });
  return slots;
}

std::vector<int> OrdersOfUsers(std::span<const double> normalized_gains) {
  const auto slots = RankOfUsers(normalized_gains);
  std::vector<int> orders(slots.size());
  for (std::size_t j = 0; j < slots.size(); ++j) {
    orders[slots[j]] = static_cast<int>(j) + 1;
  }
  return orders;
}

}  // namespace swipt
