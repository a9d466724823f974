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

#include "swipt/quadrature.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "swipt/errors.h"

namespace swipt {
namespace {

// Kronrod 15-point abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights (QUADPACK qk15 tables).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lower;
  double upper;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Segment& a, const Segment& b) const {
    return a.error < b.error;
  }
};

Segment Kronrod15(const Integrand& f, double lower, double upper) {
  const double center = 0.5 * (lower + upper);
  const double half = 0.5 * (upper - lower);
  const double f_center = f(center);
  double result_gauss = f_center * kWg[3];
  double result_kronrod = f_center * kWgk[7];
  double result_abs = std::fabs(result_kronrod);
  std::array<double, 7> fv1{};
  std::array<double, 7> fv2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double pair = fv1[j] + fv2[j];
    result_kronrod += kWgk[j] * pair;
    result_abs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
    if (j % 2 == 1) result_gauss += kWg[j / 2] * pair;
  }
  const double mean = 0.5 * result_kronrod;
  double result_asc = kWgk[7] * std::fabs(f_center - mean);
  for (int j = 0; j < 7; ++j) {
    result_asc += kWgk[j] * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));
  }
  const double value = result_kronrod * half;
  result_abs *= std::fabs(half);
  result_asc *= std::fabs(half);
  double error = std::fabs((result_kronrod - result_gauss) * half);
  if (result_asc != 0.0 && error != 0.0) {
    error = result_asc * std::min(1.0, std::pow(200.0 * error / result_asc, 1.5));
  }
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  if (result_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    error = std::max(50.0 * kEps * result_abs, error);
  }
  return {lower, upper, value, error};
}

void RequireFinite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string("integrand produced non-finite value ") + what);
  }
}

}  // namespace

void QuadratureSpec::Validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1 ||
      !(tail_cutoff_mass > 0.0) || !(tail_cutoff_mass < rel_tol)) {
    throw DomainError(
        "QuadratureSpec: need rel_tol > 0, abs_tol > 0, max_subdivisions >= 1 "
        "and 0 < tail_cutoff_mass < rel_tol");
  }
}

QuadratureResult IntegrateInterval(const Integrand& f, double lower,
                                   double upper, const QuadratureSpec& spec) {
  spec.Validate();
  if (!std::isfinite(lower) || !std::isfinite(upper) || upper < lower) {
    throw DomainError("IntegrateInterval: need finite lower <= upper");
  }
  if (upper == lower) return {};

  std::priority_queue<Segment, std::vector<Segment>, ByError> heap;
  Segment first = Kronrod15(f, lower, upper);
  RequireFinite(first.value, "on the initial interval");
  heap.push(first);
  double total = first.value;
  double total_error = first.error;
  int subdivisions = 1;

  auto target = [&] { return std::max(spec.abs_tol, spec.rel_tol * std::fabs(total)); };

  while (total_error > target()) {
    if (subdivisions >= spec.max_subdivisions) {
      throw ConvergenceError(
          "adaptive quadrature did not converge within " +
              std::to_string(spec.max_subdivisions) + " subdivisions",
          total, total_error);
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.lower + worst.upper);
    if (!(mid > worst.lower && mid < worst.upper)) {
      // Interval cannot be split any further in floating point.
      throw ConvergenceError("adaptive quadrature hit machine resolution",
                             total, total_error);
    }
    heap.pop();
    const Segment left = Kronrod15(f, worst.lower, mid);
    const Segment right = Kronrod15(f, mid, worst.upper);
    RequireFinite(left.value + right.value, "after bisection");
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
  }

  // Re-sum from scratch so the incremental updates leave no drift.
  double value = 0.0;
  double error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {value, error, subdivisions};
}

double TruncationPoint(const TailMass& envelope, double mass) {
  double upper = 1.0;
  for (int i = 0; i < 1100; ++i) {
    if (envelope(upper) < mass) return upper;
    upper *= 2.0;
  }
  throw DomainError("TruncationPoint: envelope tail never drops below cutoff");
}

QuadratureResult IntegrateSemiInfinite(const Integrand& f,
                                       const TailMass& envelope,
                                       const QuadratureSpec& spec) {
  spec.Validate();
  const double upper = TruncationPoint(envelope, spec.tail_cutoff_mass);
  return IntegrateInterval(f, 0.0, upper, spec);
}

QuadratureResult IntegrateSemiInfinite(const Integrand& f,
                                       const QuadratureSpec& spec) {
  auto mapped = [&f](double t) {
    const double one_minus = 1.0 - t;
    const double x = t / one_minus;
    const double v = f(x);
    if (v == 0.0) return 0.0;
    return v / (one_minus * one_minus);
  };
  return IntegrateInterval(mapped, 0.0, 1.0, spec);
}

}  // namespace swipt
