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

#ifndef SWIPT_QUADRATURE_H_
#define SWIPT_QUADRATURE_H_

#include <functional>

namespace swipt {

// Tolerances for the adaptive Gauss-Kronrod integrator. Defaults sit two
// orders of magnitude below the 1e-6 agreement targets used downstream.
struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
  // Semi-infinite integrals are truncated where the envelope distribution
  // has less than this much probability mass left.
  double tail_cutoff_mass = 1e-12;

  // Throws DomainError unless rel_tol > 0, abs_tol > 0, max_subdivisions >= 1
  // and 0 < tail_cutoff_mass < rel_tol.
  void Validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int subdivisions = 0;
};

using Integrand = std::function<double(double)>;

// Probability mass of an envelope distribution beyond x, i.e. 1 - cdf(x).
// Taking the complement directly avoids cancellation far in the tail.
using TailMass = std::function<double(double)>;

// Globally adaptive 7/15-point Gauss-Kronrod on [lower, upper]. Repeatedly
// bisects the sub-interval with the largest error estimate until the summed
// estimate drops below max(abs_tol, rel_tol * |value|). Deterministic.
// Throws ConvergenceError (carrying the best estimate) if the subdivision
// budget runs out.
QuadratureResult IntegrateInterval(const Integrand& f, double lower,
                                   double upper,
                                   const QuadratureSpec& spec = {});

// Integral of f over [0, inf). The range is cut at the first point (found by
// doubling from 1) where the envelope's tail mass falls below
// spec.tail_cutoff_mass; f must be dominated there by the envelope density
// times a slowly-growing factor.
QuadratureResult IntegrateSemiInfinite(const Integrand& f,
                                       const TailMass& envelope,
                                       const QuadratureSpec& spec = {});

// Envelope-free variant: maps [0, inf) onto [0, 1) with x = t / (1 - t).
QuadratureResult IntegrateSemiInfinite(const Integrand& f,
                                       const QuadratureSpec& spec = {});

// Point beyond which the envelope holds less than `mass` probability.
double TruncationPoint(const TailMass& envelope, double mass);

}  // namespace swipt

#endif  // SWIPT_QUADRATURE_H_
