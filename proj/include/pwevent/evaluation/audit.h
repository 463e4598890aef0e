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

// Exhaustive window sweeps over a budget ledger. A violation is data: the
// audit never fails, it reports where the spend exceeded the limit.

#ifndef PWEVENT_EVALUATION_AUDIT_H_
#define PWEVENT_EVALUATION_AUDIT_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pwevent/core/budget_ledger.h"
#include "pwevent/core/types.h"
#include "pwevent/evaluation/run_trace.h"

namespace pwevent {

enum class WindowKind { kFixed, kBackward, kForward };

struct Violation {
  size_t user = 0;
  // Last slot of a fixed or backward window, first slot of a forward one.
  int64_t slot = 0;
  WindowKind kind = WindowKind::kFixed;
  double spend = 0.0;
  double limit = 0.0;
};

struct AuditReport {
  std::vector<Violation> violations;
  // Smallest (limit - spend) over every checked window, overall and per
  // user. +inf when nothing was checked.
  double min_slack = 0.0;
  std::vector<double> user_min_slack;
  int64_t windows_checked = 0;

  bool pass() const { return violations.empty(); }
};

// Every trailing window [max(t - w_i + 1, 1), t] must spend at most E_i.
AuditReport AuditFixed(const BudgetLedger& ledger,
                       std::span<const FixedRequirement> requirements);

// Backward windows against E_B at each slot and forward windows
// [tau, tau + w_F - 1] (cut at the last recorded slot) against E_F(tau).
AuditReport AuditDynamic(
    const BudgetLedger& ledger,
    const std::vector<std::vector<DynamicRequirement>>& requirements);

AuditReport AuditTrace(const RunTrace& trace);

std::string_view WindowKindName(WindowKind kind);

}  // namespace pwevent

#endif  // PWEVENT_EVALUATION_AUDIT_H_
