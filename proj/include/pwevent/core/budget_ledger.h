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

#ifndef PWEVENT_CORE_BUDGET_LEDGER_H_
#define PWEVENT_CORE_BUDGET_LEDGER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace pwevent {

enum class Phase { kCalculation, kPublication, kTotal };

// Per-user history of spent budget, split by phase. Slots are 1-based and
// appended in order; window sums come from long-double prefix sums so they
// stay within 1e-9 of a naive loop on long streams.
class BudgetLedger {
 public:
  BudgetLedger() = default;
  explicit BudgetLedger(size_t num_users);

  size_t num_users() const { return eps1_.size(); }
  // Number of slots recorded so far.
  int64_t current_slot() const { return slots_; }

  // Records slot current_slot()+1. Entries must be finite and >= 0.
  absl::Status Append(std::span<const double> eps1,
                      std::span<const double> eps2);

  double Get(size_t user, Phase phase, int64_t slot) const;

  // Sum over [from, to]; requires 1 <= from <= to <= current_slot().
  absl::StatusOr<double> WindowSum(size_t user, Phase phase, int64_t from,
                                   int64_t to) const;

  // Same sum with the range clipped to [1, current_slot()]; an empty range
  // sums to 0. This is what the mechanisms use for "Σ over the last w-1".
  double ClampedSum(size_t user, Phase phase, int64_t from, int64_t to) const;

  const std::vector<double>& eps1(size_t user) const { return eps1_[user]; }
  const std::vector<double>& eps2(size_t user) const { return eps2_[user]; }

 private:
  int64_t slots_ = 0;
  std::vector<std::vector<double>> eps1_;
  std::vector<std::vector<double>> eps2_;
  // prefix[k] holds the sum over slots 1..k; prefix[0] = 0.
  std::vector<std::vector<long double>> prefix1_;
  std::vector<std::vector<long double>> prefix2_;
};

}  // namespace pwevent

#endif  // PWEVENT_CORE_BUDGET_LEDGER_H_
