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

#ifndef SWIPT_ORDERSTATS_H_
#define SWIPT_ORDERSTATS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "swipt/quadrature.h"

namespace swipt {

// The j-th smallest of N i.i.d. unit-mean normalized gains (j = N is the
// maximum). Orders are 1-based, matching the usual order-statistics notation.
struct OrderSpec {
  int n_users = 1;
  int order = 1;

  // Throws DomainError unless 1 <= order <= n_users.
  void Validate() const;
};

// Exact binomial coefficient for n <= 62 (the largest n for which every
// C(n, k) fits in 64 bits). Throws SizeError above that.
std::uint64_t BinomialExact(int n, int k);

// C(n, k) as a double: exact for n <= 62, log-gamma based beyond.
double Binomial(int n, int k);

// log C(n, k).
double LogBinomial(int n, int k);

// Density of X_(j): N C(N-1, j-1) f(x) F(x)^(j-1) (1 - F(x))^(N-j).
// Powers are taken in log space once N exceeds 30.
double OrderedPdf(const OrderSpec& spec, double k_factor, double x);

// P(X_(j) <= x) = sum_{i=j}^{N} C(N, i) F^i (1 - F)^(N - i).
double OrderedCdf(const OrderSpec& spec, double k_factor, double x);

// P(X_(N) > x) = 1 - F(x)^N: tail envelope for every order statistic of N.
double MaxOrderTail(int n_users, double k_factor, double x);

// E[X_(j)]. Rayleigh uses the harmonic partial sum sum_{l=N-j+1}^{N} 1/l;
// Ricean integrates x f_(j)(x) numerically. Results are memoized per
// (N, j, K); concurrent callers may both fill an entry, with equal values.
double ExpectedOrderedGain(const OrderSpec& spec, double k_factor);

// For each ascending order slot j = 1..N, the 0-based index of the user with
// that rank. Ties go to the lower user index first. Throws DomainError on
// non-finite input.
std::vector<std::size_t> RankOfUsers(std::span<const double> normalized_gains);

// Inverse of RankOfUsers: the 1-based order O_n of every user.
std::vector<int> OrdersOfUsers(std::span<const double> normalized_gains);

namespace internal {

// sum_{l=N-j+1}^{N} 1/l.
double HarmonicPartialSum(const OrderSpec& spec);

// Uncached quadrature of x f_(j)(x) for any K, including K = 0.
double ExpectedOrderedGainQuadrature(const OrderSpec& spec, double k_factor,
                                     const QuadratureSpec& quad = {});

}  // namespace internal
}  // namespace swipt

#endif  // SWIPT_ORDERSTATS_H_
