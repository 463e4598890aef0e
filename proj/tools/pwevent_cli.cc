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

// pwevent_cli: experiment runner, synthetic data export and trace audit.
//
//   pwevent_cli run [config.json] [--mechanism PBD,PBA] [--budget-list ...]
//   pwevent_cli gen --dataset sin --slots 2000 --users 1000 --out sin.csv
//   pwevent_cli audit trace.json
//
// Exit codes: 0 success, 1 audit violation, 2 usage or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "pwevent/datagen/generators.h"
#include "pwevent/evaluation/audit.h"
#include "pwevent/harness/config.h"
#include "pwevent/harness/runner.h"
#include "pwevent/harness/trace_io.h"
#include "pwevent/noise/rng.h"

namespace {

using pwevent::ExperimentConfig;

constexpr int kViolation = 1;
constexpr int kUsage = 2;

int Fail(const absl::Status& s) {
  std::cerr << "error: " << s.message() << "\n";
  return kUsage;
}

struct RunFlags {
  std::string config_path;
  std::vector<std::string> mechanisms;
  std::vector<double> budgets;
  std::vector<int> windows;
  std::vector<double> ratios;
  int repeats = 0;
  int64_t seed = -1;
  std::string out;
  int64_t slots = 0;
  int64_t users = 0;
  std::string dataset;
};

int Run(const RunFlags& f) {
  ExperimentConfig config;
  if (!f.config_path.empty()) {
    absl::StatusOr<ExperimentConfig> c = pwevent::LoadConfig(f.config_path);
    if (!c.ok()) return Fail(c.status());
    config = std::move(*c);
  }
  if (!f.mechanisms.empty()) {
    config.mechanisms.clear();
    for (const std::string& name : f.mechanisms) {
      absl::StatusOr<pwevent::MechanismKind> k = pwevent::ParseMechanism(name);
      if (!k.ok()) return Fail(k.status());
      config.mechanisms.push_back(*k);
    }
  }
  if (!f.budgets.empty()) config.budgets = f.budgets;
  if (!f.windows.empty()) config.windows = f.windows;
  if (!f.ratios.empty()) config.ratios = f.ratios;
  if (f.repeats > 0) config.repeats = f.repeats;
  if (f.seed >= 0) config.seed = static_cast<uint64_t>(f.seed);
  if (!f.out.empty()) config.output = f.out;
  if (f.slots > 0) config.dataset.slots = f.slots;
  if (f.users > 0) config.dataset.users = f.users;
  if (!f.dataset.empty()) config.dataset.kind = f.dataset;
  if (absl::Status s = config.Validate(); !s.ok()) return Fail(s);

  absl::StatusOr<pwevent::ExperimentSummary> summary =
      pwevent::RunExperiment(config);
  if (!summary.ok()) return Fail(summary.status());
  std::cout << summary->trials << " trials, " << summary->violating_trials
            << " with audit violations\n"
            << "records: " << summary->records_path << "\n"
            << "summary: " << summary->summary_path << "\n";
  return summary->violating_trials > 0 ? kViolation : 0;
}

struct GenFlags {
  std::string dataset = "sin";
  int64_t slots = 2000;
  int64_t users = 1000;
  uint64_t seed = 1;
  std::string out = "stream.csv";
};

int Gen(const GenFlags& f) {
  absl::StatusOr<pwevent::ProbabilitySequence> p;
  if (f.dataset == "sin") {
    p = pwevent::GenerateSin(f.slots);
  } else if (f.dataset == "log") {
    p = pwevent::GenerateLog(f.slots);
  } else if (f.dataset == "tlns") {
    p = pwevent::GenerateTlns(f.slots, f.seed);
  } else {
    return Fail(
        absl::InvalidArgumentError("gen supports --dataset sin, log or tlns"));
  }
  if (!p.ok()) return Fail(p.status());
  absl::StatusOr<std::vector<pwevent::StreamBatch>> stream =
      pwevent::RealizeBinaryStream(*p, f.users, f.seed);
  if (!stream.ok()) return Fail(stream.status());

  std::ofstream csv(f.out);
  csv << "user,time,category\n";
  for (const pwevent::StreamBatch& b : *stream) {
    for (size_t u = 0; u < b.num_users(); ++u) {
      if (auto v = b.bucket(u)) {
        csv << "u" << u << "," << (b.slot() - 1) << "," << *v << "\n";
      }
    }
  }
  if (!csv) {
    return Fail(absl::InternalError("cannot write " + f.out));
  }
  // Fixes bucket order on ingestion: category "0" is bucket 0.
  std::ofstream map(f.out + ".categories.json");
  map << nlohmann::json(std::vector<std::string>{"0", "1"}).dump() << "\n";
  nlohmann::ordered_json manifest;
  manifest["kind"] = p->kind;
  manifest["slots"] = f.slots;
  manifest["users"] = f.users;
  manifest["seed"] = f.seed;
  for (const auto& [k, v] : p->params) manifest["params"][k] = v;
  manifest["clip_count"] = p->clip_count;
  manifest["csv"] = f.out;
  manifest["category_map"] = f.out + ".categories.json";
  std::ofstream(f.out + ".manifest.json") << manifest.dump(2) << "\n";
  std::cout << "wrote " << f.out << "\n";
  return 0;
}

int Audit(const std::string& path) {
  absl::StatusOr<pwevent::RunTrace> trace = pwevent::LoadTrace(path);
  if (!trace.ok()) return Fail(trace.status());
  const pwevent::AuditReport report = pwevent::AuditTrace(*trace);
  std::cout << trace->mechanism << ": " << report.windows_checked
            << " windows, " << report.violations.size() << " violations, "
            << "min slack " << report.min_slack << "\n";
  for (const pwevent::Violation& v : report.violations) {
    std::cout << "  user " << v.user << " slot " << v.slot << " "
              << pwevent::WindowKindName(v.kind) << " spend " << v.spend
              << " > " << v.limit << "\n";
  }
  return report.pass() ? 0 : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Personalized w-event private histogram streams"};
  app.require_subcommand(1);

  RunFlags run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run an experiment grid");
  run_cmd->add_option("config", run.config_path, "JSON experiment config")
      ->check(CLI::ExistingFile);
  run_cmd
      ->add_option("--mechanism", run.mechanisms,
                   "PBD, PBA, DPBD, DPBA, BD, BA or Uniform")
      ->delimiter(',');
  run_cmd->add_option("--budget-list", run.budgets, "Grid of E")
      ->delimiter(',');
  run_cmd->add_option("--window-list", run.windows, "Grid of w")
      ->delimiter(',');
  run_cmd->add_option("--ratio", run.ratios, "Grid of ratio o")->delimiter(',');
  run_cmd->add_option("--repeats", run.repeats, "Repeats per grid point");
  run_cmd->add_option("--seed", run.seed, "Base seed");
  run_cmd->add_option("--out", run.out, "Output directory");
  run_cmd->add_option("--slots", run.slots, "Synthetic stream length");
  run_cmd->add_option("--users", run.users, "Synthetic user count");
  run_cmd->add_option("--dataset", run.dataset, "sin, log, tlns or csv");

  GenFlags gen;
  CLI::App* gen_cmd =
      app.add_subcommand("gen", "Write a synthetic stream as CSV");
  gen_cmd->add_option("--dataset", gen.dataset, "sin, log or tlns");
  gen_cmd->add_option("--slots", gen.slots, "Stream length");
  gen_cmd->add_option("--users", gen.users, "User count");
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--out", gen.out, "CSV path");

  std::string trace_path;
  CLI::App* audit_cmd = app.add_subcommand("audit", "Re-audit a saved trace");
  audit_cmd->add_option("trace", trace_path, "Trace JSON")
      ->required()
      ->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  if (*run_cmd) return Run(run);
  if (*gen_cmd) return Gen(gen);
  return Audit(trace_path);
}
