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

#include "cli/commands.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"
#include "scenarios.h"
#include "swipt/errors.h"

namespace swipt::cli {
namespace {

using testing::WeakPairScenario;
using testing::RayleighFourUsers;
using testing::SevenUserScenario;

std::string Csv(const std::vector<CsvRow>& rows) {
  std::ostringstream out;
  WriteCsv(out, rows, {"# test"});
  return out.str();
}

SweepSpec SimulatedSweep(unsigned threads) {
  SweepSpec spec;
  spec.round_robin = true;
  spec.nsnr_orders = {1, 7};
  spec.et_sets = {AllowedOrderSet({1, 2})};
  spec.mode = SweepMode::kBoth;
  spec.sim.n_slots = 20'000;
  spec.sim.seed = 5;
  spec.threads = threads;
  return spec;
}

TEST(ParseAllowedOrders, RangesAndLists) {
  EXPECT_EQ(ParseAllowedOrders("1-2").orders(), (std::vector<int>{1, 2}));
  EXPECT_EQ(ParseAllowedOrders("1,3,5").orders(), (std::vector<int>{1, 3, 5}));
  EXPECT_EQ(ParseAllowedOrders("6-7,2").orders(), (std::vector<int>{2, 6, 7}));
  EXPECT_THROW(ParseAllowedOrders("2-1"), DomainError);
  EXPECT_THROW(ParseAllowedOrders("a"), DomainError);
  EXPECT_THROW(ParseAllowedOrders(""), DomainError);
  EXPECT_THROW(ParseAllowedOrders("0-2"), DomainError);
}

TEST(RunSweep, OrderSweepCardinality) {
  SweepSpec spec;
  spec.round_robin = true;
  spec.nsnr_orders = {1, 2, 3, 4, 5, 6, 7};
  const auto rows = RunSweep(SevenUserScenario(), spec);
  EXPECT_EQ(rows.size(), 7u * 7u + 7u);
  EXPECT_EQ(rows.front().scheme, "rr");
  EXPECT_EQ(rows.back().scheme, "nsnr");
  EXPECT_EQ(rows.back().param, "7");
  EXPECT_EQ(rows.back().user, 7u);
}

TEST(RunSweep, ReferenceEtSetsAreFeasible) {
  SweepSpec spec;
  spec.et_sets = {AllowedOrderSet({1, 2}), AllowedOrderSet({3, 4}), AllowedOrderSet({6, 7})};
  const auto rows = RunSweep(SevenUserScenario(), spec);
  ASSERT_EQ(rows.size(), 21u);
  for (const auto& r : rows) {
    ASSERT_TRUE(r.feasible.has_value());
    EXPECT_TRUE(*r.feasible) << r.param;
    EXPECT_TRUE(r.capacity.has_value());
  }
}

TEST(RunSweep, InfeasibleEtRowsAreAnnotatedGaps) {
  SweepSpec spec;
  spec.et_sets = {AllowedOrderSet({3, 4})};
  const auto rows = RunSweep(WeakPairScenario(1e-11), spec);
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.feasible, false);
    EXPECT_FALSE(r.capacity || r.harvest || r.sched_prob || r.cap_stderr);
    EXPECT_NE(r.notes.find("L=2"), std::string::npos) << r.notes;
  }
  const std::string csv = Csv(rows);
  EXPECT_NE(csv.find("et,3-4,1,1,0,,,,,,false,"), std::string::npos) << csv;
}

TEST(RunSweep, IdenticalSeedsGiveIdenticalBytes) {
  const auto s = SevenUserScenario();
  const std::string a = Csv(RunSweep(s, SimulatedSweep(1)));
  const std::string b = Csv(RunSweep(s, SimulatedSweep(4)));
  EXPECT_EQ(a, b);
  auto other = SimulatedSweep(2);
  other.sim.seed = 6;
  EXPECT_NE(a, Csv(RunSweep(s, other)));
}

TEST(RunSweep, RejectsEmptyOrInvalidSpec) {
  EXPECT_THROW(RunSweep(SevenUserScenario(), SweepSpec{}), DomainError);
  SweepSpec spec;
  spec.nsnr_orders = {8};
  EXPECT_THROW(RunSweep(SevenUserScenario(), spec), DomainError);
}

TEST(WriteCsv, SchemaAndFormatting) {
  SweepSpec spec;
  spec.round_robin = true;
  const std::string csv = Csv(RunSweep(SevenUserScenario(), spec));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# test");
  std::getline(in, line);
  EXPECT_EQ(line,
            "scheme,param,user,omega,k_factor,capacity_bps_hz,harvest_w,sched_prob,"
            "cap_stderr,harv_stderr,feasible,notes");
  std::getline(in, line);
  EXPECT_EQ(line.rfind("rr,,1,1e-05,6,", 0), 0u) << line;
  EXPECT_NE(line.find(",0.142857143,"), std::string::npos) << line;
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  EXPECT_EQ(FormatCsvNumber(3.0e-5), "3e-05");
  EXPECT_EQ(FormatCsvNumber(1.0 / 3.0), "0.333333333");
}

TEST(ProvenanceComments, CarryVersionAndConfig) {
  const auto lines = ProvenanceComments(SevenUserScenario(), "swipt-sched analyze");
  ASSERT_GE(lines.size(), 3u);
  EXPECT_EQ(lines[0], "# swipt-sched 0.1.0");
  std::string joined;
  for (const auto& l : lines) {
    EXPECT_EQ(l.rfind("# ", 0), 0u);
    joined += l.substr(2) + "\n";
  }
  EXPECT_NE(joined.find("k_factor = 6"), std::string::npos);
}

TEST(Feasibility, ReportsReferenceInstances) {
  const AllowedOrderSet set({3, 4});
  const auto good = WeakPairScenario(1e-10);
  const auto good_sol = SolveEt(good, set);
  EXPECT_NE(RenderFeasibilityText(good, set, good_sol).find("verdict: feasible"),
            std::string::npos);

  const auto bad = WeakPairScenario(1e-11);
  const auto bad_sol = SolveEt(bad, set);
  const std::string text = RenderFeasibilityText(bad, set, bad_sol);
  EXPECT_NE(text.find("INFEASIBLE"), std::string::npos);
  EXPECT_NE(text.find("L = 2"), std::string::npos);

  const auto json = nlohmann::json::parse(RenderFeasibilityJson(bad, set, bad_sol));
  EXPECT_FALSE(json["feasible"].get<bool>());
  EXPECT_EQ(json["violations"][0]["L"].get<int>(), 2);
  EXPECT_EQ(json["violations"][0]["users"], nlohmann::json::array({3, 4}));
  EXPECT_NEAR(json["probabilities"][0].get<double>(), 0.0603, 1e-4);
  EXPECT_EQ(json["version"], kToolVersion);
  EXPECT_TRUE(json.contains("config"));
}

TEST(Feasibility, FullAllowedSetAlwaysFeasible) {
  for (const auto& s : {WeakPairScenario(1e-11), SevenUserScenario(), RayleighFourUsers()}) {
    EXPECT_TRUE(SolveEt(s, AllowedOrderSet::All(static_cast<int>(s.NumUsers()))).feasible);
  }
}

SimConfig Million(std::uint64_t seed = 1) {
  SimConfig c;
  c.n_slots = 1'000'000;
  c.seed = seed;
  return c;
}

TEST(Compare, NsnrAgreesStatistically) {
  const auto report = Compare(RayleighFourUsers(), OrderNsnrPolicy{2}, Million());
  EXPECT_EQ(report.entries.size(), 12u);
  EXPECT_FALSE(report.AnyFlagged());
  EXPECT_LE(report.MaxAbsZ(), kCompareZLimit);
}

TEST(Compare, RoundRobinAgreesStatistically) {
  const auto report = Compare(SevenUserScenario(), RoundRobinPolicy{}, Million());
  for (const auto& e : report.entries) {
    ASSERT_TRUE(e.z.has_value());
    EXPECT_LE(std::fabs(*e.z), kCompareZLimit) << e.user << " " << e.quantity;
  }
}

TEST(Compare, SeedMovesOnlySimulatedSide) {
  SimConfig a = Million(), b = Million(2);
  a.n_slots = b.n_slots = 20'000;
  const auto ra = Compare(RayleighFourUsers(), OrderNsnrPolicy{4}, a);
  const auto rb = Compare(RayleighFourUsers(), OrderNsnrPolicy{4}, b);
  ASSERT_EQ(ra.entries.size(), rb.entries.size());
  bool moved = false;
  for (std::size_t i = 0; i < ra.entries.size(); ++i) {
    EXPECT_EQ(ra.entries[i].analytic, rb.entries[i].analytic);
    moved |= ra.entries[i].simulated != rb.entries[i].simulated;
  }
  EXPECT_TRUE(moved);
}

TEST(Compare, InfeasibleEtHasNoAnalyticSide) {
  SimConfig c = Million();
  c.n_slots = 20'000;
  const auto report = Compare(WeakPairScenario(1e-11), OrderEtPolicy{AllowedOrderSet({3, 4})}, c);
  ASSERT_TRUE(report.et.has_value());
  EXPECT_FALSE(report.et->feasible);
  for (const auto& e : report.entries) {
    EXPECT_FALSE(e.analytic.has_value());
    EXPECT_FALSE(e.flagged);
  }
  EXPECT_NE(RenderCompare(report).find("INFEASIBLE"), std::string::npos)
      << RenderCompare(report);
}

// Runs the installed tool and returns its exit status.
int RunTool(const std::string& args) {
  const std::string cmd = std::string(SWIPT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string ConfigPath(const std::string& name) {
  return std::string(SWIPT_TEST_CONFIG_DIR) + "/" + name;
}

TEST(Tool, ExitCodes) {
  EXPECT_EQ(RunTool("feasibility -c " + ConfigPath("weak_pair_feasible.conf") + " --allowed 3-4"), 0);
  EXPECT_EQ(RunTool("feasibility -c " + ConfigPath("weak_pair_infeasible.conf") +
                    " --allowed 3-4 --format json"),
            2);
  EXPECT_EQ(RunTool("analyze -c /nonexistent.conf"), 1);
  EXPECT_EQ(RunTool("analyze -c " + ConfigPath("seven_users.conf") + " --orders 9"), 1);
  EXPECT_EQ(RunTool("analyze --bogus-flag"), 1);
  EXPECT_EQ(RunTool("--help"), 0);
  EXPECT_EQ(RunTool("linkbudget --distance 2.27 4.6"), 0);
  EXPECT_EQ(RunTool("linkbudget --distance -1"), 1);
}

TEST(Tool, CsvOutputFileIsDeterministic) {
  const std::string base = ::testing::TempDir() + "swipt_sweep_";
  const std::string args = "sweep -c " + ConfigPath("seven_users.conf") +
                           " --schemes rr,nsnr,et --orders 1,7 --allowed 1-2 "
                           "--mode both --slots 5000 --seed 3 --out ";
  ASSERT_EQ(RunTool(args + base + "a.csv"), 0);
  ASSERT_EQ(RunTool(args + base + "b.csv --threads 1"), 0);
  auto slurp = [](const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "rb");
    std::string out;
    if (f == nullptr) return out;
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, f)) > 0;) out.append(buf, n);
    std::fclose(f);
    return out;
  };
  const std::string a = slurp(base + "a.csv");
  const std::string b = slurp(base + "b.csv");
  // The invocation comment differs; everything after it must match.
  const auto body = [](const std::string& s) { return s.substr(s.find("# [system]")); };
  ASSERT_FALSE(a.empty());
  EXPECT_EQ(body(a), body(b));
  EXPECT_NE(a.find(kCsvHeader), std::string::npos);
}

}  // namespace
}  // namespace swipt::cli
