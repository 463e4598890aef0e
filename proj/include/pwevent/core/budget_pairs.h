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

#ifndef PWEVENT_CORE_BUDGET_PAIRS_H_
#define PWEVENT_CORE_BUDGET_PAIRS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace pwevent {

struct BudgetPair {
  double eps = 0.0;
  int64_t count = 0;

  friend bool operator==(const BudgetPair&, const BudgetPair&) = default;
};

// Distinct positive budgets in strictly increasing order with multiplicities.
struct BudgetQuantityPairs {
  std::vector<BudgetPair> pairs;
  // Users whose budget was zero and therefore left out of `pairs`.
  int64_t excluded_count = 0;

  int64_t total() const;
  bool empty() const { return pairs.empty(); }
};

// Groups per-user budgets. Values within kBudgetTolerance of the smallest
// member of a group are merged into it, so the representative never
// exceeds what any member can afford.
BudgetQuantityPairs CollapseBudgets(std::span<const double> eps);

}  // namespace pwevent

#endif  // PWEVENT_CORE_BUDGET_PAIRS_H_
