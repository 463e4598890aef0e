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

#ifndef PWEVENT_HARNESS_CONFIG_H_
#define PWEVENT_HARNESS_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "pwevent/datagen/csv_ingest.h"
#include "pwevent/harness/requirements.h"

namespace pwevent {

enum class MechanismKind { kPbd, kPba, kDpbd, kDpba, kBd, kBa, kUniform };

absl::StatusOr<MechanismKind> ParseMechanism(std::string_view name);
std::string_view MechanismName(MechanismKind kind);
bool IsDynamic(MechanismKind kind);
// BD, BA and Uniform give every user the grid point's (E, w).
bool IsHomogeneous(MechanismKind kind);

struct DatasetSpec {
  // "sin", "log", "tlns" or "csv".
  std::string kind = "sin";
  int64_t slots = 2000;
  int64_t users = 1000;
  // csv only.
  std::string path;
  CsvSchema schema;
  double slot_width = 1.0;
};

struct ExperimentConfig {
  DatasetSpec dataset;
  std::vector<MechanismKind> mechanisms = {MechanismKind::kPbd};
  std::vector<double> budgets = {0.6};
  std::vector<int> windows = {120};
  std::vector<double> ratios = {0.5};
  // Empty means the default domains derived from each grid point.
  std::vector<double> budget_domain;
  std::vector<int> window_domain;
  ScheduleSpec schedule;
  int repeats = 10;
  uint64_t seed = 1;
  std::string output = "results";
  bool save_traces = false;

  absl::Status Validate() const;
};

// One cell of the mechanism x E x w x o grid.
struct GridPoint {
  size_t index = 0;
  MechanismKind mechanism = MechanismKind::kPbd;
  double budget = 0.0;
  int window = 0;
  double ratio = 0.0;
};

std::vector<GridPoint> ExpandGrid(const ExperimentConfig& config);

absl::StatusOr<ExperimentConfig> ParseConfig(std::string_view json_text);
absl::StatusOr<ExperimentConfig> LoadConfig(const std::string& path);
std::string ConfigToJson(const ExperimentConfig& config);

}  // namespace pwevent

#endif  // PWEVENT_HARNESS_CONFIG_H_
