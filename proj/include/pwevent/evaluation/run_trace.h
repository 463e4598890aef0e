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

#ifndef PWEVENT_EVALUATION_RUN_TRACE_H_
#define PWEVENT_EVALUATION_RUN_TRACE_H_

#include <string>
#include <vector>

#include "pwevent/core/budget_ledger.h"
#include "pwevent/core/types.h"

namespace pwevent {

// Everything a finished run leaves behind. Exactly one of the two
// requirement fields is filled, depending on the mechanism family.
struct RunTrace {
  std::string mechanism;
  std::vector<CountVector> true_counts;
  std::vector<PublicationRecord> publications;
  BudgetLedger ledger;
  std::vector<FixedRequirement> fixed_requirements;
  // Effective (post-projection) requirements, [slot - 1][user].
  std::vector<std::vector<DynamicRequirement>> dynamic_requirements;
  std::vector<std::vector<bool>> projected;
  // Free-form JSON describing the configuration point.
  std::string metadata;

  bool is_dynamic() const { return !dynamic_requirements.empty(); }
  int64_t num_slots() const {
    return static_cast<int64_t>(publications.size());
  }
};

}  // namespace pwevent

#endif  // PWEVENT_EVALUATION_RUN_TRACE_H_
