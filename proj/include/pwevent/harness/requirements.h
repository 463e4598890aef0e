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

#ifndef PWEVENT_HARNESS_REQUIREMENTS_H_
#define PWEVENT_HARNESS_REQUIREMENTS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "pwevent/core/types.h"
#include "pwevent/noise/rng.h"

namespace pwevent {

// {E, E + 0.2, ..., 1.0}, or {E} when E exceeds 1.
std::vector<double> DefaultBudgetDomain(double budget);
// {40, 80, ..., w}, or {w} when w is below 40.
std::vector<int> DefaultWindowDomain(int window);

// round(ratio * n) users get the smallest budget and smallest window; the
// others cycle through the remaining domain values. The assignment is then
// shuffled with `seed`.
absl::StatusOr<std::vector<FixedRequirement>> AssignRequirements(
    int64_t n, std::span<const double> budget_domain,
    std::span<const int> window_domain, double ratio, uint64_t seed);

struct ScheduleSpec {
  enum class Kind { kConstant, kPeriodic, kRandom, kScripted };
  Kind kind = Kind::kRandom;
  // Pattern length for kPeriodic.
  int period = 1;
  int backward_window = 1;
  double backward_budget = 10.0;
  // kScripted: [slot][user] or [slot][0] broadcast to all users; cycled.
  std::vector<std::vector<DynamicRequirement>> script;
};

// Per-slot dynamic requirements derived from each user's static pair:
// forward budgets are drawn from domain values >= E_i and forward windows
// from domain values <= w_i; the backward side comes from ScheduleSpec.
class RequirementSchedule {
 public:
  static absl::StatusOr<RequirementSchedule> Create(
      ScheduleSpec spec, std::vector<FixedRequirement> base,
      std::vector<double> budget_domain, std::vector<int> window_domain,
      uint64_t seed);

  size_t num_users() const { return base_.size(); }
  // Requirements for slot t; slots must be requested in increasing order.
  const std::vector<DynamicRequirement>& At(int64_t t);

 private:
  RequirementSchedule(ScheduleSpec spec, std::vector<FixedRequirement> base,
                      std::vector<double> budget_domain,
                      std::vector<int> window_domain, uint64_t seed);
  DynamicRequirement Draw(size_t user);

  ScheduleSpec spec_;
  std::vector<FixedRequirement> base_;
  std::vector<std::vector<double>> budgets_;
  std::vector<std::vector<int>> windows_;
  Rng rng_;
  std::vector<std::vector<DynamicRequirement>> pattern_;
  std::vector<DynamicRequirement> current_;
};

}  // namespace pwevent

#endif  // PWEVENT_HARNESS_REQUIREMENTS_H_
