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

#ifndef SWIPT_CHANNEL_H_
#define SWIPT_CHANNEL_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace swipt {

// Statistics of one user's block-fading channel power gain h.
struct FadingParams {
  double omega = 1.0;     // mean power gain E[h], linear
  double k_factor = 0.0;  // Ricean K, linear; 0 is Rayleigh

  bool IsRayleigh() const { return k_factor == 0.0; }
  double Lambda() const { return 1.0 / omega; }
  // Throws DomainError unless omega > 0 and k_factor >= 0 (both finite).
  void Validate() const;

  friend bool operator==(const FadingParams&, const FadingParams&) = default;
};

// System constants: one access point, N users, SI units throughout.
struct Scenario {
  std::vector<FadingParams> users;
  double tx_power_w = 1.0;
  double noise_power_w = 1.0;
  double eta = 0.5;  // RF-to-DC efficiency

  std::size_t NumUsers() const { return users.size(); }

  // gamma_n = P * Omega_n / sigma^2.
  double AverageSnr(std::size_t user) const;

  // Throws DomainError on N = 0, non-positive powers, eta outside [0,1],
  // invalid fading parameters or a non-finite average SNR.
  void Validate() const;

  // The common Ricean factor when all users share one, else nullopt.
  std::optional<double> SharedKFactor() const;

  // Like SharedKFactor, but throws DomainError when users differ. The
  // order-statistics analysis needs identically distributed normalized gains.
  double RequireSharedKFactor() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

double DbmToWatts(double dbm);
double WattsToDbm(double watts);

// Density of h (non-central chi-square with two degrees of freedom for K > 0,
// exponential for K = 0). Throws DomainError for x < 0.
double PdfGain(const FadingParams& params, double x);
// P(h <= x).
double CdfGain(const FadingParams& params, double x);
// P(h > x), accurate far into the tail.
double SurvivalGain(const FadingParams& params, double x);

// Unit-mean normalized gain X = h / Omega.
double NormalizedPdf(double k_factor, double x);
double NormalizedCdf(double k_factor, double x);
double NormalizedSurvival(double k_factor, double x);

// SplitMix64 finalizer applied to (master, stream). Used to give every user
// its own generator so results do not depend on user iteration order.
std::uint64_t DeriveStreamSeed(std::uint64_t master_seed, std::uint64_t stream);

// Draws i.i.d. channel power gains for one user. h = |c|^2 with c a circular
// complex Gaussian of mean amplitude sqrt(K Omega / (K+1)) and scatter power
// Omega / (K+1); exponential with mean Omega when K = 0. Single owner.
class GainSampler {
 public:
  GainSampler(const FadingParams& params, std::uint64_t seed);

  double operator()();
  const FadingParams& params() const { return params_; }

 private:
  FadingParams params_;
  double los_amplitude_;
  double scatter_sigma_;  // per real dimension
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::exponential_distribution<double> exponential_{1.0};
};

}  // namespace swipt

#endif  // SWIPT_CHANNEL_H_
