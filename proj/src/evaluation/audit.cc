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

#include "pwevent/evaluation/audit.h"

#include <algorithm>
#include <limits>

namespace pwevent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Sweep {
 public:
  explicit Sweep(size_t num_users) {
    report_.min_slack = kInf;
    report_.user_min_slack.assign(num_users, kInf);
  }

  void Check(size_t user, int64_t slot, WindowKind kind, double spend,
             double limit) {
    ++report_.windows_checked;
    const double slack = limit - spend;
    report_.min_slack = std::min(report_.min_slack, slack);
    report_.user_min_slack[user] =
        std::min(report_.user_min_slack[user], slack);
    if (spend > limit + kBudgetTolerance) {
      report_.violations.push_back({user, slot, kind, spend, limit});
    }
  }

  AuditReport Take() { return std::move(report_); }

 private:
  AuditReport report_;
};

}  // namespace

AuditReport AuditFixed(const BudgetLedger& ledger,
                       std::span<const FixedRequirement> requirements) {
  Sweep sweep(ledger.num_users());
  const int64_t slots = ledger.current_slot();
  for (size_t i = 0; i < ledger.num_users() && i < requirements.size(); ++i) {
    const FixedRequirement& r = requirements[i];
    for (int64_t t = 1; t <= slots; ++t) {
      sweep.Check(i, t, WindowKind::kFixed,
                  ledger.ClampedSum(i, Phase::kTotal, t - r.window + 1, t),
                  r.budget);
    }
  }
  return sweep.Take();
}

AuditReport AuditDynamic(
    const BudgetLedger& ledger,
    const std::vector<std::vector<DynamicRequirement>>& requirements) {
  Sweep sweep(ledger.num_users());
  const int64_t slots =
      std::min<int64_t>(ledger.current_slot(), requirements.size());
  for (size_t i = 0; i < ledger.num_users(); ++i) {
    for (int64_t t = 1; t <= slots; ++t) {
      const DynamicRequirement& r = requirements[t - 1][i];
      sweep.Check(
          i, t, WindowKind::kBackward,
          ledger.ClampedSum(i, Phase::kTotal, t - r.backward_window + 1, t),
          r.backward_budget);
      sweep.Check(
          i, t, WindowKind::kForward,
          ledger.ClampedSum(i, Phase::kTotal, t, t + r.forward_window - 1),
          r.forward_budget);
    }
  }
  return sweep.Take();
}

AuditReport AuditTrace(const RunTrace& trace) {
  if (trace.is_dynamic()) {
    return AuditDynamic(trace.ledger, trace.dynamic_requirements);
  }
  return AuditFixed(trace.ledger, trace.fixed_requirements);
}

std::string_view WindowKindName(WindowKind kind) {
  switch (kind) {
    case WindowKind::kFixed:
      return "window";
    case WindowKind::kBackward:
      return "backward";
    case WindowKind::kForward:
      return "forward";
  }
  return "unknown";
}

}  // namespace pwevent
