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

#include "swipt/specfun.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "swipt/errors.h"

namespace swipt {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Below this the I0 power series is used directly; above it the Hankel
// asymptotic expansion is already accurate to working precision.
constexpr double kBesselSeriesLimit = 20.0;

// E1 branch switch: alternating series below, continued fraction above.
constexpr double kE1Switch = 1.0;

void RequireNonNegativeFinite(double x, const char* fn) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError(std::string(fn) + ": argument must be finite and >= 0");
  }
}

double BesselI0Series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (term < 0.5 * kEps * sum) break;
  }
  return sum;
}

// exp(-x) I0(x) ~ (2 pi x)^(-1/2) sum_k ((2k-1)!!)^2 / (k! (8x)^k).
double BesselI0ScaledAsymptotic(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next =
        term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * x * k);
    if (next >= term) break;  // asymptotic series started to diverge
    term = next;
    sum += term;
    if (term < 0.5 * kEps * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

// Both tails of the Marcum Q function from the Poisson mixture
//   Q1(a,b) = sum_k Pois(k; a^2/2) * Q(k+1, b^2/2)
// where Q(k+1, y) = e^{-y} sum_{m<=k} y^m / m! is the regularized upper
// incomplete gamma function. Whichever tail is expected to be small is
// summed directly and the other one is its complement.
struct MarcumTails {
  double q;
  double p;
};

MarcumTails MarcumTailsImpl(double a, double b) {
  const double mu = 0.5 * a * a;
  const double y = 0.5 * b * b;
  if (b == 0.0) return {1.0, 0.0};
  if (mu == 0.0) return {std::exp(-y), -std::expm1(-y)};

  const double log_mu = std::log(mu);
  const double log_y = std::log(y);
  const int kmax = static_cast<int>(std::ceil(mu + 12.0 * std::sqrt(mu) + 40.0));

  if (y > mu + 1.0) {
    // Upper tail is the small one: accumulate Q(k+1, y) upward.
    double log_w = -mu;        // log Pois(k; mu)
    double log_t = -y;         // log e^{-y} y^k / k!
    double q_inc = 0.0;        // Q(k+1, y)
    double sum = 0.0;
    for (int k = 0; k <= kmax; ++k) {
      if (k > 0) {
        log_w += log_mu - std::log(static_cast<double>(k));
        log_t += log_y - std::log(static_cast<double>(k));
      }
      q_inc += std::exp(log_t);
      const double w = std::exp(log_w);
      sum += w * q_inc;
      if (k > mu + 1.0 && sum > 0.0) {
        const double r = mu / (k + 1.0);
        const double tail_bound = w * r / (1.0 - r);
        if (tail_bound < 1e-16 * sum) break;
      }
    }
    const double q = std::min(sum, 1.0);
    return {q, 1.0 - q};
  }

  // Lower tail: P(k+1, y) = sum_{m>k} e^{-y} y^m / m!, accumulated downward
  // from kmax so every step adds a positive term.
  double log_t_top = -y + (kmax + 1) * log_y - std::lgamma(kmax + 2.0);
  double series = 1.0;
  double ratio = 1.0;
  for (int i = 1; i < 10000; ++i) {
    ratio *= y / (kmax + 1.0 + i);
    series += ratio;
    if (ratio < 0.5 * kEps * series) break;
  }
  double p_inc = std::exp(log_t_top) * series;  // P(kmax+1, y)
  double log_w = -mu + kmax * log_mu - std::lgamma(kmax + 1.0);
  double log_t = log_t_top - log_y + std::log(kmax + 1.0);  // t_kmax
  double sum = 0.0;
  for (int k = kmax; k >= 0; --k) {
    sum += std::exp(log_w) * p_inc;
    // Step to k-1: P(k, y) = P(k+1, y) + t_k.
    p_inc += std::exp(log_t);
    if (k > 0) {
      log_w -= log_mu - std::log(static_cast<double>(k));
      log_t -= log_y - std::log(static_cast<double>(k));
    }
  }
  const double p = std::min(sum, 1.0);
  return {1.0 - p, p};
}

}  // namespace

double BesselI0(double x) {
  RequireNonNegativeFinite(x, "BesselI0");
  if (x <= kBesselSeriesLimit) return BesselI0Series(x);
  return std::exp(x) * BesselI0ScaledAsymptotic(x);
}

double BesselI0Scaled(double x) {
  RequireNonNegativeFinite(x, "BesselI0Scaled");
  if (x <= kBesselSeriesLimit) return std::exp(-x) * BesselI0Series(x);
  return BesselI0ScaledAsymptotic(x);
}

double MarcumQ1(double a, double b) {
  RequireNonNegativeFinite(a, "MarcumQ1");
  RequireNonNegativeFinite(b, "MarcumQ1");
  return MarcumTailsImpl(a, b).q;
}

double MarcumP1(double a, double b) {
  RequireNonNegativeFinite(a, "MarcumP1");
  RequireNonNegativeFinite(b, "MarcumP1");
  return MarcumTailsImpl(a, b).p;
}

namespace internal {

double ExpScaledE1Series(double x) {
  // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
  long double term = 1.0L;
  long double sum = 0.0L;
  const long double lx = x;
  for (int k = 1; k < 1000; ++k) {
    term *= -lx / k;
    const long double contrib = term / k;
    sum += contrib;
    if (std::fabs(contrib) < 1e-21L * std::fabs(sum)) break;
  }
  const long double e1 =
      -std::numbers::egamma_v<long double> - std::log(lx) - sum;
  return static_cast<double>(std::exp(lx) * e1);
}

double ExpScaledE1ContinuedFraction(double x) {
  // Modified Lentz evaluation of
  //   e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...)))
  constexpr double kTiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 100000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = c * d;
    h *= del;
    if (std::fabs(del - 1.0) < 0.5 * kEps) break;
  }
  return h;
}

}  // namespace internal

double ExpIntegralE1(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("ExpIntegralE1: argument must be finite and > 0");
  }
  if (x < kE1Switch) return std::exp(-x) * internal::ExpScaledE1Series(x);
  return std::exp(-x) * internal::ExpScaledE1ContinuedFraction(x);
}

double ExpScaledE1(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("ExpScaledE1: argument must be finite and > 0");
  }
  if (x < kE1Switch) return internal::ExpScaledE1Series(x);
  return internal::ExpScaledE1ContinuedFraction(x);
}

}  // namespace swipt
