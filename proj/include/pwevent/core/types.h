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

#ifndef PWEVENT_CORE_TYPES_H_
#define PWEVENT_CORE_TYPES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "absl/status/status.h"

namespace pwevent {

// Budgets closer than this are treated as equal everywhere in the library.
inline constexpr double kBudgetTolerance = 1e-9;

// Histogram over d buckets. Values are reals because releases are noisy.
class CountVector {
 public:
  CountVector() = default;
  explicit CountVector(size_t dimension) : values_(dimension, 0.0) {}
  explicit CountVector(std::vector<double> values)
      : values_(std::move(values)) {}

  size_t dimension() const { return values_.size(); }
  double& operator[](size_t j) { return values_[j]; }
  double operator[](size_t j) const { return values_[j]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  double Total() const;

  friend bool operator==(const CountVector& a, const CountVector& b) {
    return a.values_ == b.values_;
  }

 private:
  std::vector<double> values_;
};

// One time slot of raw data: which bucket each user reported, if any.
class StreamBatch {
 public:
  static constexpr int32_t kAbsent = -1;

  StreamBatch() = default;
  StreamBatch(int64_t slot, int dimension, std::vector<int32_t> buckets)
      : slot_(slot), dimension_(dimension), buckets_(std::move(buckets)) {}

  int64_t slot() const { return slot_; }
  int dimension() const { return dimension_; }
  size_t num_users() const { return buckets_.size(); }

  std::optional<int> bucket(size_t user) const {
    int32_t b = buckets_[user];
    if (b == kAbsent) return std::nullopt;
    return b;
  }
  const std::vector<int32_t>& buckets() const { return buckets_; }

  // Every bucket index lies in [0, d) or is kAbsent.
  absl::Status Validate() const;

  CountVector Histogram() const;

 private:
  int64_t slot_ = 0;
  int dimension_ = 0;
  std::vector<int32_t> buckets_;
};

// Static w-event requirement of one user.
struct FixedRequirement {
  int window = 1;
  double budget = 1.0;

  absl::Status Validate() const;
  // Per-slot share E/(2w) used by both phases.
  double Share() const { return budget / (2.0 * window); }

  friend bool operator==(const FixedRequirement&,
                         const FixedRequirement&) = default;
};

// Requirement declared by one user at one slot for the dynamic mechanisms.
struct DynamicRequirement {
  int backward_window = 1;
  double backward_budget = 1.0;
  int forward_window = 1;
  double forward_budget = 1.0;

  absl::Status Validate() const;

  friend bool operator==(const DynamicRequirement&,
                         const DynamicRequirement&) = default;
};

enum class Decision {
  kNonNull,
  // The dissimilarity test (or an empty budget) chose the previous release.
  kSkipped,
  // Budget is still being repaid after an absorbing publication.
  kNullified,
  // An injected decision hook forced a null release.
  kForced,
};

std::string_view DecisionName(Decision decision);

struct PublicationRecord {
  int64_t slot = 0;
  CountVector release;
  Decision decision = Decision::kSkipped;
  // Per-user publication budget; all zero unless decision is kNonNull.
  std::vector<double> eps2;
  // Threshold chosen for the publication phase when one existed.
  std::optional<double> eps_opt;
  std::optional<double> err_opt;
  // Noisy dissimilarity from the calculation phase (+inf when no budget).
  double dis = 0.0;
};

// Externally injected decision used by tests to replay scripted traces.
enum class InjectedDecision { kPublish, kSkip };

}  // namespace pwevent

#endif  // PWEVENT_CORE_TYPES_H_
