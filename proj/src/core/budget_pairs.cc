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

#include "pwevent/core/budget_pairs.h"

#include <algorithm>

#include "pwevent/core/types.h"

namespace pwevent {

int64_t BudgetQuantityPairs::total() const {
  int64_t n = 0;
  for (const BudgetPair& p : pairs) n += p.count;
  return n;
}

BudgetQuantityPairs CollapseBudgets(std::span<const double> eps) {
  BudgetQuantityPairs out;
  std::vector<double> positive;
  positive.reserve(eps.size());
  for (double e : eps) {
    if (e > 0.0) {
      positive.push_back(e);
    } else {
      ++out.excluded_count;
    }
  }
  std::sort(positive.begin(), positive.end());
  for (double e : positive) {
    if (!out.pairs.empty() && e - out.pairs.back().eps <= kBudgetTolerance) {
      ++out.pairs.back().count;
    } else {
      out.pairs.push_back({e, 1});
    }
  }
  return out;
}

}  // namespace pwevent
