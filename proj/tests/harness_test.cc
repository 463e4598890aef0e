// Copyright 2026 The pwevent Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "pwevent/datagen/generators.h"
#include "pwevent/evaluation/audit.h"
#include "pwevent/evaluation/metrics.h"
#include "pwevent/harness/config.h"
#include "pwevent/harness/requirements.h"
#include "pwevent/harness/runner.h"
#include "pwevent/harness/trace_io.h"

namespace pwevent {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

std::string OutDir(const std::string& name) {
  return (std::filesystem::path(::testing::TempDir()) / name).string();
}

std::vector<std::string> ReadLines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

// Records with the wall time removed.
std::vector<std::string> StableRecords(const std::string& path) {
  std::vector<std::string> out;
  for (const std::string& line : ReadLines(path)) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(line);
    j.erase("wall_time_ms");
    out.push_back(j.dump());
  }
  return out;
}

ExperimentConfig SmokeConfig(const std::string& out) {
  ExperimentConfig c;
  c.dataset.kind = "sin";
  c.dataset.slots = 200;
  c.dataset.users = 100;
  c.mechanisms = {MechanismKind::kPbd};
  c.repeats = 2;
  c.seed = 5;
  c.output = out;
  return c;
}

TEST(MechanismNameTest, RoundTrip) {
  for (auto k : {MechanismKind::kPbd, MechanismKind::kPba, MechanismKind::kDpbd,
                 MechanismKind::kDpba, MechanismKind::kBd, MechanismKind::kBa,
                 MechanismKind::kUniform}) {
    EXPECT_EQ(*ParseMechanism(MechanismName(k)), k);
  }
  EXPECT_EQ(*ParseMechanism("dpba"), MechanismKind::kDpba);
  EXPECT_FALSE(ParseMechanism("XYZ").ok());
  EXPECT_TRUE(IsDynamic(MechanismKind::kDpbd));
  EXPECT_FALSE(IsDynamic(MechanismKind::kPba));
  EXPECT_TRUE(IsHomogeneous(MechanismKind::kUniform));
}

TEST(DomainsTest, Defaults) {
  EXPECT_THAT(DefaultBudgetDomain(0.6), ElementsAre(0.6, 0.8, 1.0));
  EXPECT_THAT(DefaultBudgetDomain(1.0), ElementsAre(1.0));
  EXPECT_EQ(DefaultBudgetDomain(0.2).size(), 5u);
  EXPECT_THAT(DefaultWindowDomain(120), ElementsAre(40, 80, 120));
  EXPECT_THAT(DefaultWindowDomain(10), ElementsAre(10));
}

TEST(AssignRequirementsTest, RatioSplits) {
  const std::vector<double> b = {0.5, 0.7, 0.9};
  const std::vector<int> w = {10, 20, 30};
  auto count_low = [](const std::vector<FixedRequirement>& r) {
    return std::count(r.begin(), r.end(), FixedRequirement{10, 0.5});
  };
  auto none = AssignRequirements(100, b, w, 0.0, 1);
  auto all = AssignRequirements(100, b, w, 1.0, 1);
  auto some = AssignRequirements(100, b, w, 0.3, 1);
  ASSERT_TRUE(none.ok() && all.ok() && some.ok());
  EXPECT_EQ(count_low(*none), 0);
  EXPECT_EQ(count_low(*all), 100);
  EXPECT_EQ(count_low(*some), 30);
  for (const FixedRequirement& r : *none) {
    EXPECT_GT(r.budget, 0.5);
    EXPECT_GT(r.window, 10);
  }
  EXPECT_EQ(*some, *AssignRequirements(100, b, w, 0.3, 1));
  EXPECT_NE(*some, *AssignRequirements(100, b, w, 0.3, 2));
  EXPECT_FALSE(AssignRequirements(10, b, w, 1.5, 1).ok());
  EXPECT_FALSE(AssignRequirements(10, {}, w, 0.5, 1).ok());
}

TEST(RequirementScheduleTest, KindsStayInDomains) {
  const std::vector<FixedRequirement> base = {{80, 0.6}, {40, 1.0}};
  const std::vector<double> budgets = {0.6, 0.8, 1.0};
  const std::vector<int> windows = {40, 80, 120};
  ScheduleSpec spec;
  auto random = RequirementSchedule::Create(spec, base, budgets, windows, 3);
  ASSERT_TRUE(random.ok());
  for (int t = 1; t <= 50; ++t) {
    const auto& r = random->At(t);
    for (size_t i = 0; i < base.size(); ++i) {
      EXPECT_GE(r[i].forward_budget, base[i].budget);
      EXPECT_LE(r[i].forward_window, base[i].window);
      EXPECT_EQ(r[i].backward_window, 1);
      EXPECT_EQ(r[i].backward_budget, 10.0);
    }
  }
  spec.kind = ScheduleSpec::Kind::kConstant;
  auto constant = RequirementSchedule::Create(spec, base, budgets, windows, 3);
  EXPECT_EQ(constant->At(7)[0], (DynamicRequirement{1, 10.0, 80, 0.6}));

  spec.kind = ScheduleSpec::Kind::kPeriodic;
  spec.period = 3;
  auto periodic = RequirementSchedule::Create(spec, base, budgets, windows, 3);
  std::vector<std::vector<DynamicRequirement>> seen;
  for (int t = 1; t <= 9; ++t) seen.push_back(periodic->At(t));
  for (int t = 4; t <= 9; ++t) EXPECT_EQ(seen[t - 1], seen[t - 4]);

  spec.kind = ScheduleSpec::Kind::kScripted;
  spec.script = {{{2, 1.0, 3, 2.0}}, {{1, 1.0, 1, 1.0}}};
  auto scripted = RequirementSchedule::Create(spec, base, budgets, windows, 3);
  EXPECT_EQ(scripted->At(1)[1], (DynamicRequirement{2, 1.0, 3, 2.0}));
  EXPECT_EQ(scripted->At(2)[0], (DynamicRequirement{1, 1.0, 1, 1.0}));
  EXPECT_EQ(scripted->At(3)[0], (DynamicRequirement{2, 1.0, 3, 2.0}));
  spec.period = 0;
  spec.kind = ScheduleSpec::Kind::kPeriodic;
  EXPECT_FALSE(
      RequirementSchedule::Create(spec, base, budgets, windows, 3).ok());
}

TEST(ConfigTest, ParseAndGrid) {
  auto c = ParseConfig(R"({
    "dataset": {"kind": "log", "slots": 300, "users": 50},
    "mechanism": ["PBD", "dpba"],
    "budgets": [0.4, 0.8], "windows": [40], "ratios": [0.2, 0.5, 0.9],
    "schedule": {"kind": "periodic", "period": 4},
    "repeats": 3, "seed": 99, "output": "x"
  })");
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->dataset.kind, "log");
  EXPECT_EQ(c->dataset.slots, 300);
  EXPECT_THAT(c->mechanisms,
              ElementsAre(MechanismKind::kPbd, MechanismKind::kDpba));
  EXPECT_EQ(c->schedule.kind, ScheduleSpec::Kind::kPeriodic);
  EXPECT_EQ(c->schedule.period, 4);
  const auto grid = ExpandGrid(*c);
  ASSERT_EQ(grid.size(), 12u);
  EXPECT_EQ(grid[11].index, 11u);
  EXPECT_EQ(grid[11].mechanism, MechanismKind::kDpba);
  EXPECT_EQ(grid[11].ratio, 0.9);
  auto again = ParseConfig(ConfigToJson(*c));
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(ExpandGrid(*again).size(), 12u);
}

TEST(ConfigTest, Errors) {
  EXPECT_FALSE(ParseConfig("{").ok());
  EXPECT_FALSE(ParseConfig("[]").ok());
  EXPECT_FALSE(ParseConfig(R"({"mechanism": "nope"})").ok());
  EXPECT_FALSE(ParseConfig(R"({"repeats": 0})").ok());
  EXPECT_FALSE(ParseConfig(R"({"budgets": []})").ok());
  EXPECT_FALSE(ParseConfig(R"({"ratios": [1.5]})").ok());
  EXPECT_FALSE(ParseConfig(R"({"dataset": {"kind": "csv"}})").ok());
  EXPECT_FALSE(ParseConfig(R"({"dataset": {"kind": "other"}})").ok());
  EXPECT_FALSE(ParseConfig(R"({"schedule": {"kind": "weekly"}})").ok());
  auto bad = ParseConfig(R"({"windows": [0]})");
  ASSERT_FALSE(bad.ok());
  EXPECT_THAT(std::string(bad.status().message()), HasSubstr("windows"));
  EXPECT_FALSE(LoadConfig(OutDir("no_such_config.json")).ok());
}

TEST(RunExperimentTest, SmokeRunIsFastAndComplete) {
  const ExperimentConfig c = SmokeConfig(OutDir("smoke"));
  const auto start = std::chrono::steady_clock::now();
  auto s = RunExperiment(c);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  ASSERT_TRUE(s.ok()) << s.status();
  EXPECT_LT(secs, 5.0);
  EXPECT_EQ(s->trials, 2);
  EXPECT_EQ(s->violating_trials, 0);
  const auto records = ReadLines(s->records_path);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(ReadLines(s->summary_path).size(), 2u);  // header + one row
  const auto j = nlohmann::json::parse(records[0]);
  for (const char* key : {"grid_index", "repeat", "mechanism", "seed", "amre",
                          "ajsd", "audit", "decisions", "wall_time_ms"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j["audit"]["pass"].get<bool>());
  EXPECT_THAT(records[0], ::testing::EndsWith("}"));
  EXPECT_NE(records[0].rfind("\"wall_time_ms\""), std::string::npos);
}

TEST(RunExperimentTest, DeterministicAcrossRunsAndThreads) {
  ExperimentConfig c = SmokeConfig(OutDir("det_a"));
  c.mechanisms = {MechanismKind::kPbd, MechanismKind::kPba,
                  MechanismKind::kDpbd, MechanismKind::kDpba};
  c.repeats = 3;
  setenv("PWEVENT_THREADS", "1", 1);
  auto a = RunExperiment(c);
  c.output = OutDir("det_b");
  setenv("PWEVENT_THREADS", "4", 1);
  auto b = RunExperiment(c);
  unsetenv("PWEVENT_THREADS");
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(a->trials, 12);
  EXPECT_EQ(StableRecords(a->records_path), StableRecords(b->records_path));
  std::ifstream sa(a->summary_path), sb(b->summary_path);
  std::stringstream ba, bb;
  ba << sa.rdbuf();
  bb << sb.rdbuf();
  EXPECT_EQ(ba.str(), bb.str());
}

TEST(RunExperimentTest, HomogeneousBdMatchesPbd) {
  ExperimentConfig pbd = SmokeConfig(OutDir("homog_pbd"));
  pbd.budget_domain = {0.6};
  pbd.window_domain = {120};
  ExperimentConfig bd = pbd;
  bd.mechanisms = {MechanismKind::kBd};
  bd.output = OutDir("homog_bd");
  auto a = RunExperiment(pbd);
  auto b = RunExperiment(bd);
  ASSERT_TRUE(a.ok() && b.ok());
  const auto ra = ReadLines(a->records_path), rb = ReadLines(b->records_path);
  ASSERT_EQ(ra.size(), rb.size());
  for (size_t k = 0; k < ra.size(); ++k) {
    EXPECT_EQ(nlohmann::json::parse(ra[k])["amre"],
              nlohmann::json::parse(rb[k])["amre"]);
  }
}

TEST(RunExperimentTest, RejectsInvalidConfig) {
  ExperimentConfig c = SmokeConfig(OutDir("bad"));
  c.repeats = 0;
  EXPECT_FALSE(RunExperiment(c).ok());
}

TEST(RunExperimentTest, CsvDataset) {
  auto p = GenerateLog(60);
  auto stream = RealizeBinaryStream(*p, 30, 4);
  const std::string path = OutDir("harness_stream.csv");
  {
    std::ofstream csv(path);
    csv << "user,time,category\n";
    for (const StreamBatch& b : *stream) {
      for (size_t u = 0; u < b.num_users(); ++u) {
        csv << "u" << u << "," << b.slot() - 1 << "," << *b.bucket(u) << "\n";
      }
    }
  }
  ExperimentConfig c = SmokeConfig(OutDir("csv_run"));
  c.dataset.kind = "csv";
  c.dataset.path = path;
  c.dataset.schema.category_col = "category";
  c.mechanisms = {MechanismKind::kPba, MechanismKind::kDpbd};
  c.windows = {10};
  auto s = RunExperiment(c);
  ASSERT_TRUE(s.ok()) << s.status();
  EXPECT_EQ(s->trials, 4);
  EXPECT_EQ(s->violating_trials, 0);
}

TEST(TraceIoTest, RoundTripPreservesAudit) {
  for (MechanismKind kind : {MechanismKind::kPba, MechanismKind::kDpba}) {
    auto p = GenerateSin(80);
    auto stream = RealizeBinaryStream(*p, 20, 3);
    auto reqs = AssignRequirements(20, DefaultBudgetDomain(0.4),
                                   std::vector<int>{5, 10}, 0.5, 3);
    auto schedule = RequirementSchedule::Create(ScheduleSpec{}, *reqs,
                                                DefaultBudgetDomain(0.4),
                                                std::vector<int>{5, 10}, 3);
    Rng rng(RngSeed{3, 3});
    auto trace = RunStream(kind, *stream, *reqs, &*schedule, rng);
    ASSERT_TRUE(trace.ok()) << trace.status();
    const std::string path = OutDir("trace.json");
    ASSERT_TRUE(SaveTrace(*trace, path).ok());
    auto back = LoadTrace(path);
    ASSERT_TRUE(back.ok()) << back.status();
    EXPECT_EQ(back->mechanism, trace->mechanism);
    EXPECT_EQ(back->num_slots(), trace->num_slots());
    EXPECT_EQ(back->is_dynamic(), trace->is_dynamic());
    AuditReport a = AuditTrace(*trace), b = AuditTrace(*back);
    EXPECT_TRUE(a.pass());
    EXPECT_EQ(a.windows_checked, b.windows_checked);
    EXPECT_NEAR(a.min_slack, b.min_slack, 1e-9);
    EXPECT_EQ(*Amre(*trace), *Amre(*back));
    for (size_t i = 0; i < 20; ++i) {
      EXPECT_EQ(back->ledger.eps2(i), trace->ledger.eps2(i));
    }
  }
  EXPECT_FALSE(TraceFromJson("{}").ok());
  EXPECT_FALSE(LoadTrace(OutDir("missing_trace.json")).ok());
}

TEST(RunStreamTest, DynamicNeedsSchedule) {
  auto p = GenerateSin(5);
  auto stream = RealizeBinaryStream(*p, 3, 1);
  Rng rng(RngSeed{1, 1});
  EXPECT_FALSE(RunStream(MechanismKind::kDpbd, *stream,
                         std::vector<FixedRequirement>(3), nullptr, rng)
                   .ok());
  EXPECT_FALSE(RunStream(MechanismKind::kPbd, *stream,
                         std::vector<FixedRequirement>(2), nullptr, rng)
                   .ok());
}

}  // namespace
}  // namespace pwevent
