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

#include "swipt/channel.h"

#include <cmath>
#include <string>

#include "swipt/errors.h"
#include "swipt/specfun.h"

namespace swipt {
namespace {

void RequireNonNegative(double x, const char* fn) {
  if (std::isnan(x) || x < 0.0) {
    throw DomainError(std::string(fn) + ": gain must be >= 0");
  }
}

// Density of the unit-mean gain. The Bessel growth is cancelled inside the
// exponent: -K - (K+1)x + 2 sqrt(K(K+1)x) = -(sqrt(K) - sqrt((K+1)x))^2.
double UnitPdf(double k, double x) {
  if (std::isinf(x)) return 0.0;
  if (k == 0.0) return std::exp(-x);
  if (x == 0.0) return (k + 1.0) * std::exp(-k);
  const double z = 2.0 * std::sqrt(k * (k + 1.0) * x);
  const double d = std::sqrt(k) - std::sqrt((k + 1.0) * x);
  return (k + 1.0) * std::exp(-d * d) * BesselI0Scaled(z);
}

double UnitSurvival(double k, double x) {
  if (std::isinf(x)) return 0.0;
  if (k == 0.0) return std::exp(-x);
  return MarcumQ1(std::sqrt(2.0 * k), std::sqrt(2.0 * (k + 1.0) * x));
}

double UnitCdf(double k, double x) {
  if (std::isinf(x)) return 1.0;
  if (k == 0.0) return -std::expm1(-x);
  return MarcumP1(std::sqrt(2.0 * k), std::sqrt(2.0 * (k + 1.0) * x));
}

}  // namespace

void FadingParams::Validate() const {
  if (!std::isfinite(omega) || !(omega > 0.0)) {
    throw DomainError("FadingParams: omega must be finite and > 0");
  }
  if (!std::isfinite(k_factor) || k_factor < 0.0) {
    throw DomainError("FadingParams: k_factor must be finite and >= 0");
  }
}

double Scenario::AverageSnr(std::size_t user) const {
  return tx_power_w * users.at(user).omega / noise_power_w;
}

void Scenario::Validate() const {
  if (users.empty()) throw DomainError("Scenario: need at least one user");
  if (!std::isfinite(tx_power_w) || !(tx_power_w > 0.0)) {
    throw DomainError("Scenario: tx power must be finite and > 0");
  }
  if (!std::isfinite(noise_power_w) || !(noise_power_w > 0.0)) {
    throw DomainError("Scenario: noise power must be finite and > 0");
  }
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("Scenario: eta must lie in [0, 1]");
  }
  for (std::size_t n = 0; n < users.size(); ++n) {
    users[n].Validate();
    const double snr = AverageSnr(n);
    if (!std::isfinite(snr) || !(snr > 0.0)) {
      throw DomainError("Scenario: average SNR of user " + std::to_string(n + 1) +
                        " is not finite and positive");
    }
  }
}

std::optional<double> Scenario::SharedKFactor() const {
  if (users.empty()) return std::nullopt;
  const double k = users.front().k_factor;
  for (const auto& u : users) {
    if (u.k_factor != k) return std::nullopt;
  }
  return k;
}

double Scenario::RequireSharedKFactor() const {
  const auto k = SharedKFactor();
  if (!k) {
    throw DomainError(
        "order-based analysis requires all users to share one Ricean K factor");
  }
  return *k;
}

double DbmToWatts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double WattsToDbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double PdfGain(const FadingParams& params, double x) {
  RequireNonNegative(x, "PdfGain");
  return UnitPdf(params.k_factor, x / params.omega) / params.omega;
}

double CdfGain(const FadingParams& params, double x) {
  RequireNonNegative(x, "CdfGain");
  return UnitCdf(params.k_factor, x / params.omega);
}

double SurvivalGain(const FadingParams& params, double x) {
  RequireNonNegative(x, "SurvivalGain");
  return UnitSurvival(params.k_factor, x / params.omega);
}

double NormalizedPdf(double k_factor, double x) {
  RequireNonNegative(x, "NormalizedPdf");
  return UnitPdf(k_factor, x);
}

double NormalizedCdf(double k_factor, double x) {
  RequireNonNegative(x, "NormalizedCdf");
  return UnitCdf(k_factor, x);
}

double NormalizedSurvival(double k_factor, double x) {
  RequireNonNegative(x, "NormalizedSurvival");
  return UnitSurvival(k_factor, x);
}

std::uint64_t DeriveStreamSeed(std::uint64_t master_seed, std::uint64_t stream) {
  std::uint64_t z = master_seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

GainSampler::GainSampler(const FadingParams& params, std::uint64_t seed)
    : params_(params),
      los_amplitude_(std::sqrt(params.k_factor * params.omega /
                               (params.k_factor + 1.0))),
      scatter_sigma_(std::sqrt(params.omega / (2.0 * (params.k_factor + 1.0)))),
      engine_(seed) {
  params_.Validate();
}

double GainSampler::operator()() {
  if (params_.IsRayleigh()) return params_.omega * exponential_(engine_);
  const double re = los_amplitude_ + scatter_sigma_ * normal_(engine_);
  const double im = scatter_sigma_ * normal_(engine_);
  return re * re + im * im;
}

}  // namespace swipt
