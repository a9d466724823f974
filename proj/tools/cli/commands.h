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

#ifndef SWIPT_TOOLS_CLI_COMMANDS_H_
#define SWIPT_TOOLS_CLI_COMMANDS_H_

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "swipt/analytic.h"
#include "swipt/channel.h"
#include "swipt/sim.h"

namespace swipt::cli {

inline constexpr const char* kToolName = "swipt-sched";
inline constexpr const char* kToolVersion = "0.1.0";

inline constexpr const char* kCsvHeader =
    "scheme,param,user,omega,k_factor,capacity_bps_hz,harvest_w,sched_prob,"
    "cap_stderr,harv_stderr,feasible,notes";

// Order lists on the command line: "3", "1-2", "1,3,5", "1-3,6". Throws
// DomainError on malformed input.
std::vector<int> ParseOrderList(std::string_view text);
AllowedOrderSet ParseAllowedOrders(std::string_view text);

enum class SweepMode { kAnalytic, kSimulate, kBoth };

std::optional<SweepMode> ParseSweepMode(std::string_view text);

struct SweepSpec {
  bool round_robin = false;
  std::vector<int> nsnr_orders;
  std::vector<AllowedOrderSet> et_sets;
  SweepMode mode = SweepMode::kAnalytic;
  SimConfig sim;
  unsigned threads = 0;  // 0: hardware concurrency

  // Throws DomainError when nothing is selected or an order exceeds N.
  void ValidateFor(int n_users) const;
};

struct CsvRow {
  std::string scheme;  // rr | nsnr | et
  std::string param;   // order j, allowed set, or empty
  std::size_t user = 0;  // 1-based
  double omega = 0.0;
  double k_factor = 0.0;
  std::optional<double> capacity;
  std::optional<double> harvest;
  std::optional<double> sched_prob;
  std::optional<double> cap_stderr;
  std::optional<double> harv_stderr;
  std::optional<bool> feasible;  // ET rows only
  std::string notes;
};

// Evaluates every selected (scheme, parameter) point, in parallel, and
// returns rows in a fixed order: rr, nsnr by order, et by set; analytic
// before simulated; users ascending. Infeasible ET sets yield analytic rows
// with feasible=false, a violation summary in `notes` and no numbers.
std::vector<CsvRow> RunSweep(const Scenario& scenario, const SweepSpec& spec);

// 9 significant digits.
std::string FormatCsvNumber(double value);

// "# " prefixed lines: tool version, invocation, resolved configuration.
std::vector<std::string> ProvenanceComments(const Scenario& scenario,
                                            const std::string& invocation);

void WriteCsv(std::ostream& out, const std::vector<CsvRow>& rows,
              const std::vector<std::string>& comments);

// Human-readable and JSON renderings of an ET feasibility analysis.
std::string RenderFeasibilityText(const Scenario& scenario,
                                  const AllowedOrderSet& allowed,
                                  const EtSolution& solution);
std::string RenderFeasibilityJson(const Scenario& scenario,
                                  const AllowedOrderSet& allowed,
                                  const EtSolution& solution);

// One analytic-vs-simulated comparison line.
struct CompareEntry {
  std::size_t user = 0;  // 1-based
  std::string quantity;  // capacity | harvest | sched_prob
  std::optional<double> analytic;
  double simulated = 0.0;
  double stderr_value = 0.0;
  std::optional<double> z;
  bool flagged = false;  // |z| > kCompareZLimit
};

inline constexpr double kCompareZLimit = 4.0;

struct CompareReport {
  std::string policy;
  std::optional<EtSolution> et;  // set for ET policies
  std::vector<CompareEntry> entries;

  double MaxAbsZ() const;
  bool AnyFlagged() const;
};

// Runs the analytic model and the simulator for one policy. For an
// infeasible ET set the analytic side only carries the verdict.
CompareReport Compare(const Scenario& scenario, const SchedulerPolicy& policy,
                      const SimConfig& config);

std::string RenderCompare(const CompareReport& report);

}  // namespace swipt::cli

#endif  // SWIPT_TOOLS_CLI_COMMANDS_H_
