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

// swipt-sched: rate-energy analysis and simulation of order-based SWIPT
// scheduling. See README.md for the subcommands.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "cli/commands.h"
#include "cli/config.h"
#include "swipt/errors.h"

namespace {

using swipt::cli::ConfigError;

constexpr int kExitOk = 0;
constexpr int kExitInvalidConfig = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitConvergence = 3;

struct Options {
  std::string config;
  std::string out;
  std::uint64_t seed = 1;
  std::uint64_t slots = 1'000'000;
  std::uint64_t warmup = 0;
  bool warmup_set = false;
  unsigned threads = 0;
  std::string schemes;
  std::string orders;
  std::vector<std::string> allowed;
  std::string mode = "analytic";
  std::string format = "text";
  std::string scheme;
  int order = 0;
  std::string beta = "vanishing";
  // linkbudget
  double frequency_hz = 915e6;
  std::vector<double> distances;
  double exponent = 2.76;
  double ref_loss_db = 0.0;
  bool ref_loss_set = false;
  double tx_gain_dbi = 0.0;
  double rx_gain_dbi = 0.0;
};

std::string Invocation(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i > 0) s += ' ';
    s += argv[i];
  }
  return s;
}

swipt::Scenario LoadScenario(const Options& opt) {
  if (opt.config.empty()) {
    throw ConfigError("<command line>", 0, "--config", "a scenario file is required");
  }
  return swipt::cli::ParseConfigFile(swipt::cli::ResolveConfigPath(opt.config));
}

swipt::SimConfig MakeSimConfig(const Options& opt) {
  swipt::SimConfig sim;
  sim.n_slots = opt.slots;
  sim.seed = opt.seed;
  if (opt.warmup_set) sim.warmup_slots = opt.warmup;
  return sim;
}

swipt::BetaSchedule ParseBeta(const std::string& text) {
  if (text == "vanishing") return swipt::VanishingStep{};
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return swipt::ConstantStep{v};
  } catch (const std::exception&) {
  }
  throw swipt::DomainError("--beta expects 'vanishing' or a number in (0,1)");
}

void Emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + opt.out);
  out << text;
}

std::string CommentHeader(const swipt::Scenario& scenario, const std::string& invocation) {
  std::string out;
  for (const auto& line : swipt::cli::ProvenanceComments(scenario, invocation)) {
    out += line + '\n';
  }
  return out;
}

int RunSweepCommand(const Options& opt, swipt::cli::SweepMode mode,
                    const std::string& default_schemes, const std::string& invocation) {
  const auto scenario = LoadScenario(opt);
  const int n = static_cast<int>(scenario.NumUsers());
  swipt::cli::SweepSpec spec;
  spec.mode = mode;
  spec.sim = MakeSimConfig(opt);
  spec.threads = opt.threads;
  std::string schemes = opt.schemes.empty() ? default_schemes : opt.schemes;
  if (schemes.empty()) schemes = opt.allowed.empty() ? "rr,nsnr" : "rr,nsnr,et";
  std::stringstream ss(schemes);
  for (std::string s; std::getline(ss, s, ',');) {
    if (s == "rr") {
      spec.round_robin = true;
    } else if (s == "nsnr") {
      spec.nsnr_orders = opt.orders.empty()
                             ? swipt::AllowedOrderSet::All(n).orders()
                             : swipt::cli::ParseOrderList(opt.orders);
    } else if (s == "et") {
      if (opt.allowed.empty()) {
        throw swipt::DomainError("scheme 'et' needs at least one --allowed set");
      }
      for (const auto& a : opt.allowed) {
        spec.et_sets.push_back(swipt::cli::ParseAllowedOrders(a));
      }
    } else {
      throw swipt::DomainError("unknown scheme '" + s + "' (use rr, nsnr, et)");
    }
  }
  const auto rows = swipt::cli::RunSweep(scenario, spec);
  auto comments = swipt::cli::ProvenanceComments(scenario, invocation);
  if (mode != swipt::cli::SweepMode::kAnalytic) {
    comments.push_back(fmt::format("# sim: slots={} seed={}", opt.slots, opt.seed));
  }
  std::ostringstream out;
  swipt::cli::WriteCsv(out, rows, comments);
  Emit(opt, out.str());
  return kExitOk;
}

int RunFeasibility(const Options& opt, const std::string& invocation) {
  const auto scenario = LoadScenario(opt);
  if (opt.allowed.size() != 1) {
    throw swipt::DomainError("feasibility needs exactly one --allowed set");
  }
  const auto allowed = swipt::cli::ParseAllowedOrders(opt.allowed.front());
  const auto solution = swipt::SolveEt(scenario, allowed);
  Emit(opt, opt.format == "json"
                ? swipt::cli::RenderFeasibilityJson(scenario, allowed, solution) + "\n"
                : CommentHeader(scenario, invocation) +
                      swipt::cli::RenderFeasibilityText(scenario, allowed, solution));
  return solution.feasible ? kExitOk : kExitInfeasible;
}

int RunCompare(const Options& opt, const std::string& invocation) {
  const auto scenario = LoadScenario(opt);
  swipt::SchedulerPolicy policy;
  if (opt.scheme == "rr") {
    policy = swipt::RoundRobinPolicy{};
  } else if (opt.scheme == "nsnr") {
    policy = swipt::OrderNsnrPolicy{opt.order};
  } else if (opt.scheme == "et") {
    if (opt.allowed.size() != 1) {
      throw swipt::DomainError("compare --scheme et needs exactly one --allowed set");
    }
    policy = swipt::OrderEtPolicy{swipt::cli::ParseAllowedOrders(opt.allowed.front()),
                                  ParseBeta(opt.beta)};
  } else {
    throw swipt::DomainError("--scheme must be rr, nsnr or et");
  }
  const auto report = swipt::cli::Compare(scenario, policy, MakeSimConfig(opt));
  Emit(opt, CommentHeader(scenario, invocation) +
                fmt::format("# sim: slots={} seed={}\n", opt.slots, opt.seed) +
                swipt::cli::RenderCompare(report));
  return kExitOk;
}

int RunLinkBudget(const Options& opt, const std::string& invocation) {
  std::string text;
  if (!opt.config.empty()) {
    const auto scenario = LoadScenario(opt);
    text = CommentHeader(scenario, invocation) + "user,omega,omega_db\n";
    for (std::size_t n = 0; n < scenario.NumUsers(); ++n) {
      const double o = scenario.users[n].omega;
      text += fmt::format("{},{},{}\n", n + 1, swipt::cli::FormatCsvNumber(o),
                          swipt::cli::FormatCsvNumber(10.0 * std::log10(o)));
    }
  } else {
    if (opt.distances.empty()) {
      throw swipt::DomainError("linkbudget needs --config or at least one --distance");
    }
    text = fmt::format("# {} {}\n# invocation: {}\n", swipt::cli::kToolName,
                       swipt::cli::kToolVersion, invocation);
    const std::optional<double> ref =
        opt.ref_loss_set ? std::optional<double>(opt.ref_loss_db) : std::nullopt;
    text += fmt::format("# PL(1 m) = {} dB{}\n",
                        swipt::cli::FormatCsvNumber(
                            ref.value_or(swipt::cli::FreeSpaceLossDb(opt.frequency_hz, 1.0))),
                        ref ? "" : " (free space)");
    text += "distance_m,omega,omega_db\n";
    for (double d : opt.distances) {
      const double o = swipt::cli::LinkBudgetOmega(opt.frequency_hz, d, opt.exponent, ref,
                                                   opt.tx_gain_dbi, opt.rx_gain_dbi);
      text += fmt::format("{},{},{}\n", swipt::cli::FormatCsvNumber(d),
                          swipt::cli::FormatCsvNumber(o),
                          swipt::cli::FormatCsvNumber(10.0 * std::log10(o)));
    }
  }
  Emit(opt, text);
  return kExitOk;
}

void AddCommon(CLI::App* cmd, Options& opt) {
  cmd->add_option("-c,--config", opt.config,
                  "Scenario file (relative paths also searched in $SWIPT_CONFIG_DIR)");
  cmd->add_option("-o,--out", opt.out, "Write output to this file instead of stdout");
}

void AddSim(CLI::App* cmd, Options& opt) {
  cmd->add_option("--seed", opt.seed, "Master seed for the per-user generators");
  cmd->add_option("--slots", opt.slots, "Number of simulated slots")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--warmup", opt.warmup,
                  "ET slots excluded from averages (default: 1% of --slots)")
      ->each([&opt](const std::string&) { opt.warmup_set = true; });
}

void AddSelection(CLI::App* cmd, Options& opt) {
  cmd->add_option("--schemes", opt.schemes, "Comma list of rr, nsnr, et");
  cmd->add_option("--orders", opt.orders, "N-SNR orders, e.g. 1-7 or 1,4 (default all)");
  cmd->add_option("--allowed", opt.allowed, "ET allowed order set, e.g. 1-2 or 1,3,5")
      ->take_all();
  cmd->add_option("--threads", opt.threads, "Worker threads (default: all cores)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate-energy analysis and Monte Carlo simulation of order-based "
               "SWIPT scheduling"};
  app.set_version_flag("--version", std::string(swipt::cli::kToolVersion));
  app.require_subcommand(1);
  Options opt;

  auto* analyze = app.add_subcommand("analyze", "Analytic rate-energy points as CSV");
  AddCommon(analyze, opt);
  AddSelection(analyze, opt);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo rate-energy points as CSV");
  AddCommon(simulate, opt);
  AddSelection(simulate, opt);
  AddSim(simulate, opt);

  auto* sweep = app.add_subcommand("sweep", "Analytic and/or simulated sweep as CSV");
  AddCommon(sweep, opt);
  AddSelection(sweep, opt);
  AddSim(sweep, opt);
  sweep->add_option("--mode", opt.mode, "analytic | simulate | both")
      ->check(CLI::IsMember({"analytic", "simulate", "both"}));

  auto* feasibility = app.add_subcommand(
      "feasibility", "ET scheduling probabilities and feasibility verdict (exit 2 if infeasible)");
  AddCommon(feasibility, opt);
  feasibility->add_option("--allowed", opt.allowed, "Allowed order set")->required();
  feasibility->add_option("--format", opt.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* compare = app.add_subcommand("compare", "Analytic vs simulated values with z-scores");
  AddCommon(compare, opt);
  AddSim(compare, opt);
  compare->add_option("--scheme", opt.scheme, "rr | nsnr | et")->required();
  compare->add_option("--order", opt.order, "N-SNR order j");
  compare->add_option("--allowed", opt.allowed, "ET allowed order set");
  compare->add_option("--beta", opt.beta, "ET smoothing: 'vanishing' (1/t) or a constant");

  auto* linkbudget = app.add_subcommand(
      "linkbudget",
      "Mean channel gains from a log-distance path loss model. Antenna gains "
      "default to 0 dBi; an omega list in a scenario file is taken as already "
      "including every gain and loss");
  AddCommon(linkbudget, opt);
  linkbudget->add_option("--frequency-hz", opt.frequency_hz, "Carrier frequency");
  linkbudget->add_option("--distance", opt.distances, "AP-user distance in metres")
      ->take_all();
  linkbudget->add_option("--exponent", opt.exponent, "Path loss exponent");
  linkbudget->add_option("--ref-loss-db", opt.ref_loss_db,
                         "Path loss at 1 m (default: free space)")
      ->each([&opt](const std::string&) { opt.ref_loss_set = true; });
  linkbudget->add_option("--tx-gain-dbi", opt.tx_gain_dbi, "AP antenna gain");
  linkbudget->add_option("--rx-gain-dbi", opt.rx_gain_dbi, "User antenna gain");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidConfig;
  }

  const std::string invocation = Invocation(argc, argv);
  try {
    if (*analyze) return RunSweepCommand(opt, swipt::cli::SweepMode::kAnalytic, opt.schemes, invocation);
    if (*simulate) return RunSweepCommand(opt, swipt::cli::SweepMode::kSimulate, opt.schemes, invocation);
    if (*sweep) {
      return RunSweepCommand(opt, *swipt::cli::ParseSweepMode(opt.mode), opt.schemes,
                             invocation);
    }
    if (*feasibility) return RunFeasibility(opt, invocation);
    if (*compare) return RunCompare(opt, invocation);
    if (*linkbudget) return RunLinkBudget(opt, invocation);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const swipt::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << fmt::format(" (estimate {}, error bound {})",
                                                      e.estimate(), e.error_bound())
              << '\n';
    return kExitConvergence;
  } catch (const swipt::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  }
  return kExitOk;
}
