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

#ifndef SWIPT_TOOLS_CLI_CONFIG_H_
#define SWIPT_TOOLS_CLI_CONFIG_H_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "swipt/channel.h"

namespace swipt::cli {

// Invalid or unreadable scenario configuration. `line` is 0 when the problem
// is not tied to one line (missing field, file not found).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& field,
              const std::string& message);

  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

// Log-distance path loss block of a scenario file.
struct LinkBudget {
  double frequency_hz = 915e6;
  std::vector<double> distances_m;
  double path_loss_exponent = 2.76;
  // Path loss at the 1 m reference distance; free-space loss when unset.
  std::optional<double> ref_loss_db_at_1m;
  double tx_antenna_gain_dbi = 0.0;
  double rx_antenna_gain_dbi = 0.0;
};

// Free-space path loss 20 log10(4 pi d f / c) in dB.
double FreeSpaceLossDb(double frequency_hz, double distance_m);

// Mean power gain at `distance_m`:
//   10^{-(PL(1 m) + 10 n log10(d) - G_tx - G_rx) / 10}.
// Throws DomainError for non-positive distance or frequency.
double LinkBudgetOmega(double frequency_hz, double distance_m, double exponent,
                       std::optional<double> ref_loss_db_at_1m,
                       double tx_gain_dbi, double rx_gain_dbi);

std::vector<double> ResolveLinkBudget(const LinkBudget& budget);

// Scenario file grammar (INI style, one key per line):
//
//   # comment (also ';')
//   [system]
//   n_users     = 7
//   tx_power    = 1 W          ; units: W, mW, dBW, dBm
//   noise_power = -96 dBm
//   eta         = 0.5
//   [fading]
//   model    = ricean          ; rayleigh | ricean
//   k_factor = 6               ; linear, required for ricean
//   [users]
//   omega = 1e-5, 2e-5, ...    ; n_users linear mean gains
//   [link_budget]              ; alternative to [users]
//   frequency_hz        = 915e6
//   distances_m         = 4.6, 4.0, ...
//   path_loss_exponent  = 2.76
//   ref_loss_db_at_1m   = 31.7 ; optional, free space at 1 m by default
//   tx_antenna_gain_dbi = 0    ; optional
//   rx_antenna_gain_dbi = 0    ; optional
//
// Exactly one of [users] and [link_budget] must be present. Unknown sections
// or keys, duplicates, missing units and mismatched list lengths are errors.
Scenario ParseConfigText(std::string_view text,
                         const std::string& source = "<config>");

Scenario ParseConfigFile(const std::filesystem::path& path);

// Canonical text for a scenario, in watts with round-trip precision; feeding
// it back to ParseConfigText reproduces the scenario exactly. Requires a
// shared K factor.
std::string EmitConfig(const Scenario& scenario);

// Parses "<value> <unit>" with unit W, mW, dBW or dBm into watts.
double ParsePower(std::string_view text);

// Resolves a config path: as given if it exists, else relative to
// $SWIPT_CONFIG_DIR when that is set.
std::filesystem::path ResolveConfigPath(const std::filesystem::path& path);

inline constexpr const char* kConfigDirEnv = "SWIPT_CONFIG_DIR";

}  // namespace swipt::cli

#endif  // SWIPT_TOOLS_CLI_CONFIG_H_
