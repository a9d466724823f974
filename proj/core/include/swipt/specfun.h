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

#ifndef SWIPT_SPECFUN_H_
#define SWIPT_SPECFUN_H_

namespace swipt {

// Modified Bessel function of the first kind, order zero. Relative error is
// below 1e-12 over the whole representable range; overflows to +inf for
// x > ~713, use BesselI0Scaled there.
double BesselI0(double x);

// exp(-x) * I0(x). Finite for every finite x >= 0.
double BesselI0Scaled(double x);

// First-order Marcum Q function
//   Q1(a, b) = int_b^inf t exp(-(t^2 + a^2) / 2) I0(a t) dt.
// Absolute error below 1e-10; both tails are summed as series of positive
// terms, so whichever of Q1 and 1 - Q1 is small keeps relative accuracy when
// requested through the matching function.
double MarcumQ1(double a, double b);

// 1 - Q1(a, b), evaluated without cancellation when it is small.
double MarcumP1(double a, double b);

// Exponential integral E1(x) = int_1^inf exp(-t x) / t dt, x > 0.
double ExpIntegralE1(double x);

// exp(x) * E1(x). Stays finite as x grows, which the Rayleigh capacity
// formulas rely on when the average SNR is tiny.
double ExpScaledE1(double x);

namespace internal {

// Branch-specific evaluations of exp(x) * E1(x), exposed so tests can check
// that the two agree around the switchover point.
double ExpScaledE1Series(double x);
double ExpScaledE1ContinuedFraction(double x);

}  // namespace internal
}  // namespace swipt

#endif  // SWIPT_SPECFUN_H_
