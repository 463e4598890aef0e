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

#ifndef PWEVENT_HARNESS_RUNNER_H_
#define PWEVENT_HARNESS_RUNNER_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pwevent/core/types.h"
#include "pwevent/evaluation/audit.h"
#include "pwevent/evaluation/run_trace.h"
#include "pwevent/harness/config.h"
#include "pwevent/harness/requirements.h"
#include "pwevent/noise/rng.h"

namespace pwevent {

// Optional per-slot decision override, for replaying scripted traces.
using DecisionScript =
    std::function<std::optional<InjectedDecision>(int64_t slot)>;

// Drives one mechanism over a whole stream. Fixed mechanisms read
// `requirements`; dynamic ones read `schedule`, which must be non-null.
absl::StatusOr<RunTrace> RunStream(
    MechanismKind kind, const std::vector<StreamBatch>& stream,
    const std::vector<FixedRequirement>& requirements,
    RequirementSchedule* schedule, Rng& rng,
    const DecisionScript& decisions = {});

struct DecisionCounts {
  int64_t non_null = 0;
  int64_t skipped = 0;
  int64_t nullified = 0;
  int64_t forced = 0;
};
DecisionCounts CountDecisions(const RunTrace& trace);

struct TrialOutcome {
  GridPoint point;
  int repeat = 0;
  double amre = 0.0;
  double ajsd = 0.0;
  AuditReport audit;
  DecisionCounts decisions;
  int64_t projected = 0;
  double wall_ms = 0.0;
  // Set only when the config asks for saved traces.
  std::optional<RunTrace> trace;
};

// Builds the stream and requirements of one trial and runs it. Randomness
// comes from sub-streams of the base seed keyed by grid index and repeat,
// so the result does not depend on which thread runs it.
absl::StatusOr<TrialOutcome> RunTrial(const ExperimentConfig& config,
                                      const GridPoint& point, int repeat);

struct ExperimentSummary {
  int64_t trials = 0;
  int64_t violating_trials = 0;
  std::string records_path;
  std::string summary_path;
};

// Runs every grid point and repeat, writing results.jsonl and summary.csv
// under config.output. Trial parallelism is capped by PWEVENT_THREADS.
absl::StatusOr<ExperimentSummary> RunExperiment(const ExperimentConfig& config);

// One JSON-lines record; wall time is the last field.
std::string TrialRecordJson(const TrialOutcome& outcome,
                            const ExperimentConfig& config);

}  // namespace pwevent

#endif  // PWEVENT_HARNESS_RUNNER_H_
