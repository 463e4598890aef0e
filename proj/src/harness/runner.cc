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

#include "pwevent/harness/runner.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "pwevent/datagen/generators.h"
#include "pwevent/dynamic_mechanisms/dynamic_mechanism.h"
#include "pwevent/evaluation/metrics.h"
#include "pwevent/fixed_mechanisms/fixed_mechanism.h"
#include "pwevent/harness/trace_io.h"

namespace pwevent {
namespace {

using nlohmann::ordered_json;

// Sub-stream tags so data, requirements and noise never share a stream.
constexpr uint64_t kDataTag = 0x64617461;
constexpr uint64_t kRequirementTag = 0x72657173;
constexpr uint64_t kScheduleTag = 0x73636864;
constexpr uint64_t kNoiseTag = 0x6e6f6973;

uint64_t SubSeed(uint64_t base, std::initializer_list<uint64_t> keys) {
  return DeriveSeed(base, keys).stream_id;
}

absl::StatusOr<std::vector<StreamBatch>> BuildSyntheticStream(
    const ExperimentConfig& config, int repeat) {
  const DatasetSpec& d = config.dataset;
  const uint64_t seed = SubSeed(config.seed, {kDataTag, uint64_t(repeat)});
  absl::StatusOr<ProbabilitySequence> p;
  if (d.kind == "sin") {
    p = GenerateSin(d.slots);
  } else if (d.kind == "log") {
    p = GenerateLog(d.slots);
  } else if (d.kind == "tlns") {
    p = GenerateTlns(d.slots, seed);
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("dataset '", d.kind, "' is not synthetic"));
  }
  if (!p.ok()) return p.status();
  return RealizeBinaryStream(*p, d.users, seed);
}

absl::StatusOr<std::vector<StreamBatch>> LoadCsvStream(
    const ExperimentConfig& config) {
  absl::StatusOr<IngestResult> r = IngestCsv(
      config.dataset.path, config.dataset.schema, config.dataset.slot_width);
  if (!r.ok()) return r.status();
  std::vector<StreamBatch> stream = std::move(r->stream);
  if (config.dataset.slots > 0 &&
      stream.size() > static_cast<size_t>(config.dataset.slots)) {
    stream.resize(config.dataset.slots);
  }
  if (stream.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat(config.dataset.path, " produced no slots"));
  }
  return stream;
}

int ThreadCount(size_t trials) {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PWEVENT_THREADS")) {
    int v;
    if (absl::SimpleAtoi(env, &v) && v >= 1) threads = v;
  }
  threads = std::max(threads, 1);
  return std::min<int>(threads, std::max<size_t>(trials, 1));
}

absl::StatusOr<TrialOutcome> RunTrialOn(
    const ExperimentConfig& config, const GridPoint& point, int repeat,
    const std::vector<StreamBatch>& stream) {
  const auto start = std::chrono::steady_clock::now();
  const int64_t n = static_cast<int64_t>(stream.front().num_users());
  std::vector<FixedRequirement> reqs;
  if (IsHomogeneous(point.mechanism)) {
    reqs.assign(n, FixedRequirement{point.window, point.budget});
  }
  std::vector<double> budget_domain = config.budget_domain.empty()
                                          ? DefaultBudgetDomain(point.budget)
                                          : config.budget_domain;
  std::vector<int> window_domain = config.window_domain.empty()
                                       ? DefaultWindowDomain(point.window)
                                       : config.window_domain;
  if (!IsHomogeneous(point.mechanism)) {
    absl::StatusOr<std::vector<FixedRequirement>> assigned = AssignRequirements(
        n, budget_domain, window_domain, point.ratio,
        SubSeed(config.seed, {kRequirementTag, uint64_t(repeat)}));
    if (!assigned.ok()) return assigned.status();
    reqs = std::move(*assigned);
  }
  std::optional<RequirementSchedule> schedule;
  if (IsDynamic(point.mechanism)) {
    absl::StatusOr<RequirementSchedule> s = RequirementSchedule::Create(
        config.schedule, reqs, budget_domain, window_domain,
        SubSeed(config.seed, {kScheduleTag, point.index, uint64_t(repeat)}));
    if (!s.ok()) return s.status();
    schedule.emplace(std::move(*s));
  }

  Rng rng(DeriveSeed(config.seed, {kNoiseTag, point.index, uint64_t(repeat)}));
  absl::StatusOr<RunTrace> trace = RunStream(
      point.mechanism, stream, reqs, schedule ? &*schedule : nullptr, rng);
  if (!trace.ok()) return trace.status();

  TrialOutcome out;
  out.point = point;
  out.repeat = repeat;
  absl::StatusOr<double> amre = Amre(*trace);
  absl::StatusOr<double> ajsd = Ajsd(*trace);
  if (!amre.ok()) return amre.status();
  if (!ajsd.ok()) return ajsd.status();
  out.amre = *amre;
  out.ajsd = *ajsd;
  out.audit = AuditTrace(*trace);
  out.decisions = CountDecisions(*trace);
  for (const auto& slot : trace->projected) {
    out.projected += std::count(slot.begin(), slot.end(), true);
  }
  if (config.save_traces) out.trace = std::move(*trace);
  out.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return out;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

absl::StatusOr<RunTrace> RunStream(
    MechanismKind kind, const std::vector<StreamBatch>& stream,
    const std::vector<FixedRequirement>& requirements,
    RequirementSchedule* schedule, Rng& rng, const DecisionScript& decisions) {
  if (stream.empty()) return absl::InvalidArgumentError("empty stream");
  const int d = stream.front().dimension();
  const size_t n = stream.front().num_users();
  RunTrace trace;
  trace.mechanism = std::string(MechanismName(kind));
  trace.true_counts.reserve(stream.size());
  auto inject = [&](int64_t t) -> std::optional<InjectedDecision> {
    return decisions ? decisions(t) : std::nullopt;
  };

  if (IsDynamic(kind)) {
    if (schedule == nullptr || schedule->num_users() != n) {
      return absl::InvalidArgumentError(
          "dynamic mechanisms need a schedule covering every user");
    }
    absl::StatusOr<DynamicMechanismState> state =
        DynamicMechanismState::Create(n, d);
    if (!state.ok()) return state.status();
    for (const StreamBatch& batch : stream) {
      const std::vector<DynamicRequirement>& declared =
          schedule->At(batch.slot());
      absl::StatusOr<PublicationRecord> r =
          kind == MechanismKind::kDpbd
              ? DpbdStep(*state, batch, declared, rng, inject(batch.slot()))
              : DpbaStep(*state, batch, declared, rng, inject(batch.slot()));
      if (!r.ok()) return r.status();
      trace.true_counts.push_back(batch.Histogram());
    }
    trace.dynamic_requirements = state->effective();
    trace.projected = state->projected();
    trace.ledger = std::move(state->stream().ledger);
    trace.publications = std::move(state->stream().publications);
    return trace;
  }

  if (requirements.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "got ", requirements.size(), " requirements for ", n, " users"));
  }
  absl::StatusOr<FixedMechanismState> state =
      FixedMechanismState::Create(requirements, d);
  if (!state.ok()) return state.status();
  for (const StreamBatch& batch : stream) {
    absl::StatusOr<PublicationRecord> r;
    switch (kind) {
      case MechanismKind::kPbd:
        r = PbdStep(*state, batch, rng, inject(batch.slot()));
        break;
      case MechanismKind::kPba:
        r = PbaStep(*state, batch, rng, inject(batch.slot()));
        break;
      case MechanismKind::kBd:
        r = BaselineStep(BaselineKind::kBd, requirements.front(), *state, batch,
                         rng, inject(batch.slot()));
        break;
      case MechanismKind::kBa:
        r = BaselineStep(BaselineKind::kBa, requirements.front(), *state, batch,
                         rng, inject(batch.slot()));
        break;
      case MechanismKind::kUniform:
        r = BaselineStep(BaselineKind::kUniform, requirements.front(), *state,
                         batch, rng);
        break;
      default:
        return absl::InternalError("unhandled mechanism");
    }
    if (!r.ok()) return r.status();
    trace.true_counts.push_back(batch.Histogram());
  }
  trace.fixed_requirements = requirements;
  trace.ledger = std::move(state->stream().ledger);
  trace.publications = std::move(state->stream().publications);
  return trace;
}

DecisionCounts CountDecisions(const RunTrace& trace) {
  DecisionCounts c;
  for (const PublicationRecord& r : trace.publications) {
    switch (r.decision) {
      case Decision::kNonNull:
        ++c.non_null;
        break;
      case Decision::kSkipped:
        ++c.skipped;
        break;
      case Decision::kNullified:
        ++c.nullified;
        break;
      case Decision::kForced:
        ++c.forced;
        break;
    }
  }
  return c;
}

absl::StatusOr<TrialOutcome> RunTrial(const ExperimentConfig& config,
                                      const GridPoint& point, int repeat) {
  absl::StatusOr<std::vector<StreamBatch>> stream =
      config.dataset.kind == "csv" ? LoadCsvStream(config)
                                   : BuildSyntheticStream(config, repeat);
  if (!stream.ok()) return stream.status();
  return RunTrialOn(config, point, repeat, *stream);
}

std::string TrialRecordJson(const TrialOutcome& o,
                            const ExperimentConfig& config) {
  ordered_json j;
  j["grid_index"] = o.point.index;
  j["repeat"] = o.repeat;
  j["mechanism"] = MechanismName(o.point.mechanism);
  j["dataset"] = config.dataset.kind;
  j["budget"] = o.point.budget;
  j["window"] = o.point.window;
  j["ratio"] = o.point.ratio;
  j["seed"] = config.seed;
  j["amre"] = o.amre;
  j["ajsd"] = o.ajsd;
  ordered_json audit;
  audit["pass"] = o.audit.pass();
  audit["violations"] = o.audit.violations.size();
  audit["windows_checked"] = o.audit.windows_checked;
  audit["min_slack"] = o.audit.min_slack;
  if (!o.audit.pass()) {
    const Violation& v = o.audit.violations.front();
    audit["first_violation"] = {{"user", v.user},
                                {"slot", v.slot},
                                {"kind", WindowKindName(v.kind)},
                                {"spend", v.spend},
                                {"limit", v.limit}};
  }
  j["audit"] = audit;
  j["violation"] = !o.audit.pass();
  j["decisions"] = {{"non_null", o.decisions.non_null},
                    {"skipped", o.decisions.skipped},
                    {"nullified", o.decisions.nullified},
                    {"forced", o.decisions.forced}};
  if (IsDynamic(o.point.mechanism)) j["projected"] = o.projected;
  j["wall_time_ms"] = o.wall_ms;
  return j.dump();
}

absl::StatusOr<ExperimentSummary> RunExperiment(
    const ExperimentConfig& config) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  std::optional<std::vector<StreamBatch>> csv;
  if (config.dataset.kind == "csv") {
    absl::StatusOr<std::vector<StreamBatch>> s = LoadCsvStream(config);
    if (!s.ok()) return s.status();
    csv = std::move(*s);
  }

  const std::vector<GridPoint> grid = ExpandGrid(config);
  const size_t trials = grid.size() * config.repeats;
  std::vector<std::optional<TrialOutcome>> outcomes(trials);
  std::atomic<size_t> next{0};
  std::mutex error_mu;
  absl::Status error;
  auto worker = [&]() {
    for (size_t k = next++; k < trials; k = next++) {
      const GridPoint& point = grid[k / config.repeats];
      const int repeat = static_cast<int>(k % config.repeats);
      absl::StatusOr<TrialOutcome> o;
      if (csv) {
        o = RunTrialOn(config, point, repeat, *csv);
      } else {
        absl::StatusOr<std::vector<StreamBatch>> stream =
            BuildSyntheticStream(config, repeat);
        o = stream.ok() ? RunTrialOn(config, point, repeat, *stream)
                        : absl::StatusOr<TrialOutcome>(stream.status());
      }
      if (!o.ok()) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (error.ok()) error = o.status();
        next = trials;
        return;
      }
      outcomes[k] = std::move(*o);
    }
  };
  const int threads = ThreadCount(trials);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (!error.ok()) return error;

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(config.output, ec);
  if (ec) {
    return absl::InternalError(
        absl::StrCat("cannot create ", config.output, ": ", ec.message()));
  }
  ExperimentSummary summary;
  summary.trials = static_cast<int64_t>(trials);
  summary.records_path = (fs::path(config.output) / "results.jsonl").string();
  summary.summary_path = (fs::path(config.output) / "summary.csv").string();

  std::ofstream records(summary.records_path);
  for (const auto& o : outcomes) {
    records << TrialRecordJson(*o, config) << "\n";
    if (!o->audit.pass()) ++summary.violating_trials;
    if (o->trace.has_value()) {
      fs::create_directories(fs::path(config.output) / "traces", ec);
      const std::string path =
          (fs::path(config.output) / "traces" /
           absl::StrCat("trial_", o->point.index, "_", o->repeat, ".json"))
              .string();
      if (absl::Status s = SaveTrace(*o->trace, path); !s.ok()) return s;
    }
  }
  if (!records) {
    return absl::InternalError(
        absl::StrCat("cannot write ", summary.records_path));
  }

  std::ofstream csv_out(summary.summary_path);
  csv_out << "grid_index,mechanism,dataset,budget,window,ratio,repeats,"
             "amre_mean,amre_median,ajsd_mean,ajsd_median,violating_trials\n";
  for (const GridPoint& p : grid) {
    std::vector<double> amre, ajsd;
    int64_t bad = 0;
    for (int r = 0; r < config.repeats; ++r) {
      const TrialOutcome& o = *outcomes[p.index * config.repeats + r];
      amre.push_back(o.amre);
      ajsd.push_back(o.ajsd);
      if (!o.audit.pass()) ++bad;
    }
    double amre_mean = 0.0, ajsd_mean = 0.0;
    for (double v : amre) amre_mean += v / amre.size();
    for (double v : ajsd) ajsd_mean += v / ajsd.size();
    csv_out << absl::StrCat(
                   p.index, ",", std::string(MechanismName(p.mechanism)), ",",
                   config.dataset.kind, ",", p.budget, ",", p.window, ",",
                   p.ratio, ",", config.repeats, ",", amre_mean, ",",
                   Median(amre), ",", ajsd_mean, ",", Median(ajsd), ",", bad)
            << "\n";
  }
  if (!csv_out) {
    return absl::InternalError(
        absl::StrCat("cannot write ", summary.summary_path));
  }
  return summary;
}

}  // namespace pwevent
