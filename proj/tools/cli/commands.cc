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

#include "commands.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "config.h"
#include "json.hpp"
#include "swipt/errors.h"
#include "swipt/orderstats.h"

namespace swipt::cli {
namespace {

int ParseInt(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw DomainError("bad order '" + std::string(s) + "'");
  }
  return v;
}

enum class PointKind { kRoundRobin, kNsnr, kEt };

struct SweepPoint {
  PointKind kind;
  int order = 0;
  std::optional<AllowedOrderSet> allowed;
  bool simulate = false;
};

CsvRow BaseRow(const Scenario& scenario, std::string scheme, std::string param,
               std::size_t user) {
  CsvRow row;
  row.scheme = std::move(scheme);
  row.param = std::move(param);
  row.user = user + 1;
  row.omega = scenario.users[user].omega;
  row.k_factor = scenario.users[user].k_factor;
  return row;
}

std::string ViolationSummary(const std::vector<FeasibilityViolation>& violations) {
  std::vector<std::string> parts;
  for (const auto& v : violations) {
    std::vector<std::size_t> users;
    for (auto u : v.users) users.push_back(u + 1);
    parts.push_back(fmt::format("cond{} L={} users={} lhs={} rhs={}", v.condition,
                                v.subset_size, fmt::join(users, "+"),
                                FormatCsvNumber(v.lhs), FormatCsvNumber(v.rhs)));
  }
  return fmt::format("{}", fmt::join(parts, "; "));
}

std::vector<CsvRow> EvaluatePoint(const Scenario& scenario, const SweepPoint& point,
                                  const SimConfig& sim) {
  const std::size_t n = scenario.NumUsers();
  std::vector<CsvRow> rows;
  std::string scheme;
  std::string param;
  SchedulerPolicy policy;
  switch (point.kind) {
    case PointKind::kRoundRobin:
      scheme = "rr";
      policy = RoundRobinPolicy{};
      break;
    case PointKind::kNsnr:
      scheme = "nsnr";
      param = std::to_string(point.order);
      policy = OrderNsnrPolicy{point.order};
      break;
    case PointKind::kEt:
      scheme = "et";
      param = point.allowed->ToString();
      policy = OrderEtPolicy{*point.allowed};
      break;
  }

  std::optional<EtSolution> et_solution;
  if (point.kind == PointKind::kEt) et_solution = SolveEt(scenario, *point.allowed);

  if (point.simulate) {
    const SimResult result = RunSimulation(scenario, policy, sim);
    for (std::size_t u = 0; u < n; ++u) {
      CsvRow row = BaseRow(scenario, scheme, param, u);
      row.capacity = result.capacity_mean[u];
      row.harvest = result.harvest_mean[u];
      row.sched_prob = result.schedule_frequency[u];
      row.cap_stderr = result.capacity_stderr[u];
      row.harv_stderr = result.harvest_stderr[u];
      row.notes = "simulated";
      if (et_solution) {
        row.feasible = et_solution->feasible;
        if (!et_solution->feasible) row.notes += "; analytically infeasible";
      }
      rows.push_back(std::move(row));
    }
    return rows;
  }

  SchedulerAnalysis analysis;
  switch (point.kind) {
    case PointKind::kRoundRobin:
      analysis = RoundRobinAnalysis(scenario);
      break;
    case PointKind::kNsnr:
      analysis = NsnrAnalysis(scenario, point.order);
      break;
    case PointKind::kEt: {
      if (!et_solution->feasible) {
        const std::string summary = "analytic; infeasible: " +
                                    ViolationSummary(et_solution->violations);
        for (std::size_t u = 0; u < n; ++u) {
          CsvRow row = BaseRow(scenario, scheme, param, u);
          row.feasible = false;
          row.notes = summary;
          rows.push_back(std::move(row));
        }
        return rows;
      }
      analysis = *EtAnalyze(scenario, *point.allowed).analysis;
      break;
    }
  }
  for (std::size_t u = 0; u < n; ++u) {
    CsvRow row = BaseRow(scenario, scheme, param, u);
    row.capacity = analysis.capacity[u];
    row.harvest = analysis.harvest[u];
    row.sched_prob = analysis.schedule_probability[u];
    if (et_solution) row.feasible = true;
    row.notes = "analytic";
    for (const auto& w : analysis.warnings) row.notes += "; " + w;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string OptionalNumber(const std::optional<double>& v) {
  return v ? FormatCsvNumber(*v) : std::string();
}

CompareEntry MakeEntry(std::size_t user, std::string quantity,
                       std::optional<double> analytic, double simulated,
                       double stderr_value) {
  CompareEntry e;
  e.user = user + 1;
  e.quantity = std::move(quantity);
  e.analytic = analytic;
  e.simulated = simulated;
  e.stderr_value = stderr_value;
  if (analytic) {
    const double diff = simulated - *analytic;
    if (stderr_value > 0.0) {
      e.z = diff / stderr_value;
    } else {
      e.z = diff == 0.0 ? 0.0 : std::copysign(INFINITY, diff);
    }
    e.flagged = std::fabs(*e.z) > kCompareZLimit;
  }
  return e;
}

}  // namespace

std::vector<int> ParseOrderList(std::string_view text) {
  std::vector<int> out;
  std::string_view rest = text;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(ParseInt(item));
    } else {
      const int lo = ParseInt(item.substr(0, dash));
      const int hi = ParseInt(item.substr(dash + 1));
      if (hi < lo) throw DomainError("descending range '" + std::string(item) + "'");
      for (int j = lo; j <= hi; ++j) out.push_back(j);
    }
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

AllowedOrderSet ParseAllowedOrders(std::string_view text) {
  return AllowedOrderSet(ParseOrderList(text));
}

std::optional<SweepMode> ParseSweepMode(std::string_view text) {
  if (text == "analytic") return SweepMode::kAnalytic;
  if (text == "simulate") return SweepMode::kSimulate;
  if (text == "both") return SweepMode::kBoth;
  return std::nullopt;
}

void SweepSpec::ValidateFor(int n_users) const {
  if (!round_robin && nsnr_orders.empty() && et_sets.empty()) {
    throw DomainError("sweep selects no scheme");
  }
  for (int j : nsnr_orders) {
    OrderSpec{n_users, j}.Validate();
  }
  for (const auto& s : et_sets) s.ValidateFor(n_users);
  if (mode != SweepMode::kAnalytic) sim.Validate();
}

std::vector<CsvRow> RunSweep(const Scenario& scenario, const SweepSpec& spec) {
  scenario.Validate();
  spec.ValidateFor(static_cast<int>(scenario.NumUsers()));

  std::vector<SweepPoint> points;
  const auto add = [&](SweepPoint p) {
    if (spec.mode != SweepMode::kSimulate) {
      p.simulate = false;
      points.push_back(p);
    }
    if (spec.mode != SweepMode::kAnalytic) {
      p.simulate = true;
      points.push_back(p);
    }
  };
  if (spec.round_robin) add({PointKind::kRoundRobin, 0, std::nullopt, false});
  for (int j : spec.nsnr_orders) add({PointKind::kNsnr, j, std::nullopt, false});
  for (const auto& s : spec.et_sets) add({PointKind::kEt, 0, s});

  std::vector<std::vector<CsvRow>> results(points.size());
  std::vector<std::exception_ptr> errors(points.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        results[i] = EvaluatePoint(scenario, points[i], spec.sim);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(points.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<CsvRow> rows;
  for (auto& r : results) {
    rows.insert(rows.end(), std::make_move_iterator(r.begin()),
                std::make_move_iterator(r.end()));
  }
  return rows;
}

std::string FormatCsvNumber(double value) { return fmt::format("{:.9g}", value); }

std::vector<std::string> ProvenanceComments(const Scenario& scenario,
                                            const std::string& invocation) {
  std::vector<std::string> lines;
  lines.push_back(fmt::format("# {} {}", kToolName, kToolVersion));
  if (!invocation.empty()) lines.push_back("# invocation: " + invocation);
  std::istringstream config(EmitConfig(scenario));
  for (std::string line; std::getline(config, line);) lines.push_back("# " + line);
  return lines;
}

void WriteCsv(std::ostream& out, const std::vector<CsvRow>& rows,
              const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << c << '\n';
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << CsvField(r.scheme) << ',' << CsvField(r.param) << ',' << r.user << ','
        << FormatCsvNumber(r.omega) << ',' << FormatCsvNumber(r.k_factor) << ','
        << OptionalNumber(r.capacity) << ',' << OptionalNumber(r.harvest) << ','
        << OptionalNumber(r.sched_prob) << ',' << OptionalNumber(r.cap_stderr) << ','
        << OptionalNumber(r.harv_stderr) << ','
        << (r.feasible ? (*r.feasible ? "true" : "false") : "") << ','
        << CsvField(r.notes) << '\n';
  }
}

std::string RenderFeasibilityText(const Scenario& scenario,
                                  const AllowedOrderSet& allowed,
                                  const EtSolution& solution) {
  std::string out;
  out += fmt::format("ET feasibility: N = {}, S_a = {{{}}}, |S_a| = {}\n",
                     scenario.NumUsers(), fmt::join(allowed.orders(), ","),
                     allowed.size());
  out += fmt::format("equal throughput r = {} bits/s/Hz\n",
                     FormatCsvNumber(solution.equal_throughput));
  for (std::size_t n = 0; n < solution.probabilities.size(); ++n) {
    out += fmt::format("  user {:>3}  omega = {:<12}  p = {:.6f}\n", n + 1,
                       FormatCsvNumber(scenario.users[n].omega),
                       solution.probabilities[n]);
  }
  out += fmt::format("verdict: {}\n", solution.feasible ? "feasible" : "INFEASIBLE");
  for (const auto& v : solution.violations) {
    std::vector<std::size_t> users;
    for (auto u : v.users) users.push_back(u + 1);
    if (v.condition == 1) {
      out += fmt::format("  violated condition 1 (p_n <= |S_a|/N): user {}  {:.6f} > {:.6f}\n",
                         users.front(), v.lhs, v.rhs);
    } else {
      out += fmt::format(
          "  violated condition 2 at L = {}: users {{{}}}  sum p = {:.6f} > bound {:.6f}\n",
          v.subset_size, fmt::join(users, ","), v.lhs, v.rhs);
    }
  }
  return out;
}

std::string RenderFeasibilityJson(const Scenario& scenario,
                                  const AllowedOrderSet& allowed,
                                  const EtSolution& solution) {
  nlohmann::json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = EmitConfig(scenario);
  j["n_users"] = scenario.NumUsers();
  j["allowed"] = allowed.orders();
  j["equal_throughput"] = solution.equal_throughput;
  j["probabilities"] = solution.probabilities;
  j["feasible"] = solution.feasible;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : solution.violations) {
    std::vector<std::size_t> users;
    for (auto u : v.users) users.push_back(u + 1);
    j["violations"].push_back({{"condition", v.condition},
                               {"L", v.subset_size},
                               {"users", users},
                               {"lhs", v.lhs},
                               {"rhs", v.rhs}});
  }
  return j.dump(2);
}

double CompareReport::MaxAbsZ() const {
  double best = 0.0;
  for (const auto& e : entries) {
    if (e.z) best = std::max(best, std::fabs(*e.z));
  }
  return best;
}

bool CompareReport::AnyFlagged() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const CompareEntry& e) { return e.flagged; });
}

CompareReport Compare(const Scenario& scenario, const SchedulerPolicy& policy,
                      const SimConfig& config) {
  scenario.Validate();
  const std::size_t n = scenario.NumUsers();
  ValidatePolicy(policy, static_cast<int>(n));

  CompareReport report;
  report.policy = DescribePolicy(policy);
  std::optional<SchedulerAnalysis> analysis;
  if (std::holds_alternative<RoundRobinPolicy>(policy)) {
    analysis = RoundRobinAnalysis(scenario);
  } else if (const auto* p = std::get_if<OrderNsnrPolicy>(&policy)) {
    analysis = NsnrAnalysis(scenario, p->order);
  } else {
    const auto& et = std::get<OrderEtPolicy>(policy);
    auto result = EtAnalyze(scenario, et.allowed);
    report.et = result.solution;
    analysis = std::move(result.analysis);
  }

  const SimResult sim = RunSimulation(scenario, policy, config);
  const double slots = static_cast<double>(sim.averaged_slots);
  for (std::size_t u = 0; u < n; ++u) {
    const auto pick = [&](const std::vector<double> SchedulerAnalysis::*field)
        -> std::optional<double> {
      if (!analysis) return std::nullopt;
      return ((*analysis).*field)[u];
    };
    report.entries.push_back(MakeEntry(u, "capacity", pick(&SchedulerAnalysis::capacity),
                                       sim.capacity_mean[u], sim.capacity_stderr[u]));
    report.entries.push_back(MakeEntry(u, "harvest", pick(&SchedulerAnalysis::harvest),
                                       sim.harvest_mean[u], sim.harvest_stderr[u]));
    const double f = sim.schedule_frequency[u];
    report.entries.push_back(
        MakeEntry(u, "sched_prob", pick(&SchedulerAnalysis::schedule_probability), f,
                  std::sqrt(f * (1.0 - f) / slots)));
  }
  return report;
}

std::string RenderCompare(const CompareReport& report) {
  std::string out = fmt::format("policy {}\n", report.policy);
  if (report.et) {
    out += fmt::format("analytic ET: r = {}  verdict {}\n",
                       FormatCsvNumber(report.et->equal_throughput),
                       report.et->feasible ? "feasible" : "INFEASIBLE (simulated values only)");
  }
  out += fmt::format("{:>4}  {:<10}  {:>16}  {:>16}  {:>12}  {:>8}\n", "user",
                     "quantity", "analytic", "simulated", "stderr", "z");
  for (const auto& e : report.entries) {
    out += fmt::format("{:>4}  {:<10}  {:>16}  {:>16}  {:>12}  {:>8}{}\n", e.user,
                       e.quantity, e.analytic ? FormatCsvNumber(*e.analytic) : "-",
                       FormatCsvNumber(e.simulated), FormatCsvNumber(e.stderr_value),
                       e.z ? fmt::format("{:.2f}", *e.z) : "-",
                       e.flagged ? "  <-- |z| > 4" : "");
  }
  out += fmt::format("max |z| = {:.2f}{}\n", report.MaxAbsZ(),
                     report.AnyFlagged() ? "  (disagreement flagged)" : "");
  return out;
}

}  // namespace swipt::cli
