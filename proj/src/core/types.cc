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

#include "pwevent/core/types.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace pwevent {

double CountVector::Total() const {
  double total = 0.0;
  for (double v : values_) total += v;
  return total;
}

absl::Status StreamBatch::Validate() const {
  if (dimension_ <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be positive, got ", dimension_));
  }
  if (slot_ < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("slots start at 1, got ", slot_));
  }
  for (size_t i = 0; i < buckets_.size(); ++i) {
    int32_t b = buckets_[i];
    if (b == kAbsent) continue;
    if (b < 0 || b >= dimension_) {
      return absl::InvalidArgumentError(
          absl::StrCat("user ", i, " reported bucket ", b, " outside [0, ",
                       dimension_, ") at slot ", slot_));
    }
  }
  return absl::OkStatus();
}

CountVector StreamBatch::Histogram() const {
  CountVector counts(dimension_);
  for (int32_t b : buckets_) {
    if (b != kAbsent) counts[b] += 1.0;
  }
  return counts;
}

absl::Status FixedRequirement::Validate() const {
  if (window < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("window must be at least 1, got ", window));
  }
  if (!std::isfinite(budget) || budget <= 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("budget must be positive and finite, got ", budget));
  }
  return absl::OkStatus();
}

absl::Status DynamicRequirement::Validate() const {
  if (backward_window < 1 || forward_window < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("windows must be at least 1, got backward ",
                     backward_window, " forward ", forward_window));
  }
  if (!std::isfinite(backward_budget) || backward_budget <= 0.0 ||
      !std::isfinite(forward_budget) || forward_budget <= 0.0) {
    return absl::InvalidArgumentError(
        absl::StrCat("budgets must be positive and finite, got backward ",
                     backward_budget, " forward ", forward_budget));
  }
  return absl::OkStatus();
}

std::string_view DecisionName(Decision decision) {
  switch (decision) {
    case Decision::kNonNull:
      return "non_null";
    case Decision::kSkipped:
      return "skipped";
    case Decision::kNullified:
      return "nullified";
    case Decision::kForced:
      return "forced";
  }
  return "unknown";
}

}  // namespace pwevent
