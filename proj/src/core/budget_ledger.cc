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

#include "pwevent/core/budget_ledger.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace pwevent {

BudgetLedger::BudgetLedger(size_t num_users)
    : eps1_(num_users),
      eps2_(num_users),
      prefix1_(num_users, std::vector<long double>{0.0L}),
      prefix2_(num_users, std::vector<long double>{0.0L}) {}

absl::Status BudgetLedger::Append(std::span<const double> eps1,
                                  std::span<const double> eps2) {
  const size_t n = num_users();
  if (eps1.size() != n || eps2.size() != n) {
    return absl::InvalidArgumentError(
        absl::StrCat("ledger expects ", n, " entries per phase, got ",
                     eps1.size(), " and ", eps2.size()));
  }
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(eps1[i]) || eps1[i] < 0.0 || !std::isfinite(eps2[i]) ||
        eps2[i] < 0.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("negative or non-finite spend for user ", i, " at slot ",
                       slots_ + 1));
    }
  }
  for (size_t i = 0; i < n; ++i) {
    eps1_[i].push_back(eps1[i]);
    eps2_[i].push_back(eps2[i]);
    prefix1_[i].push_back(prefix1_[i].back() + eps1[i]);
    prefix2_[i].push_back(prefix2_[i].back() + eps2[i]);
  }
  ++slots_;
  return absl::OkStatus();
}

double BudgetLedger::Get(size_t user, Phase phase, int64_t slot) const {
  const double a = eps1_[user][slot - 1];
  const double b = eps2_[user][slot - 1];
  switch (phase) {
    case Phase::kCalculation:
      return a;
    case Phase::kPublication:
      return b;
    case Phase::kTotal:
      return a + b;
  }
  return 0.0;
}

absl::StatusOr<double> BudgetLedger::WindowSum(size_t user, Phase phase,
                                               int64_t from, int64_t to) const {
  if (user >= num_users()) {
    return absl::OutOfRangeError(absl::StrCat("no user ", user));
  }
  if (from < 1 || from > to || to > slots_) {
    return absl::OutOfRangeError(absl::StrCat("window [", from, ", ", to,
                                              "] outside [1, ", slots_, "]"));
  }
  return ClampedSum(user, phase, from, to);
}

double BudgetLedger::ClampedSum(size_t user, Phase phase, int64_t from,
                                int64_t to) const {
  from = std::max<int64_t>(from, 1);
  to = std::min<int64_t>(to, slots_);
  if (from > to) return 0.0;
  long double s = 0.0L;
  if (phase != Phase::kPublication) {
    s += prefix1_[user][to] - prefix1_[user][from - 1];
  }
  if (phase != Phase::kCalculation) {
    s += prefix2_[user][to] - prefix2_[user][from - 1];
  }
  return static_cast<double>(s);
}

}  // namespace pwevent
