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

// Personalized w-event mechanisms for static requirements.
//
// Every slot runs two phases. The calculation phase spends E_i/(2w_i) per
// user on a private dissimilarity against the last non-null release. The
// publication phase then picks a per-user budget from the remaining half:
// distribution (PBD) halves what is left in the window, absorption (PBA)
// takes the shares of slots skipped since the last release and then
// nullifies as many slots to pay them back.

#ifndef PWEVENT_FIXED_MECHANISMS_FIXED_MECHANISM_H_
#define PWEVENT_FIXED_MECHANISMS_FIXED_MECHANISM_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "pwevent/core/budget_ledger.h"
#include "pwevent/core/types.h"
#include "pwevent/noise/rng.h"

namespace pwevent {

// State shared by every stream mechanism: the ledger and the release chain.
struct StreamState {
  int dimension = 0;
  BudgetLedger ledger;
  std::vector<PublicationRecord> publications;
  std::optional<int64_t> last_nonnull_slot;
  // r_{t-1}; the zero vector before the first slot.
  CountVector last_release;
  // r_l for the last non-null slot l; the zero vector when there is none.
  CountVector last_nonnull_release;

  StreamState() = default;
  StreamState(size_t num_users, int d)
      : dimension(d),
        ledger(num_users),
        last_release(d),
        last_nonnull_release(d) {}

  int64_t next_slot() const { return ledger.current_slot() + 1; }
};

// Checks that `batch` matches the state shape and is the next slot.
absl::Status CheckBatch(const StreamState& state, const StreamBatch& batch);

// Shared tail of every step: runs OBS on eps2, compares dis with the square
// root of its error (unless a decision is injected), releases or reuses the
// previous release, and appends both phases to the ledger.
absl::StatusOr<PublicationRecord> FinishStep(
    StreamState& state, const StreamBatch& batch, std::vector<double> eps1,
    std::vector<double> eps2, double dis,
    std::optional<InjectedDecision> injected, Rng& rng);

// Records a nullified slot: eps2 is zero and the previous release repeats.
absl::StatusOr<PublicationRecord> NullifyStep(StreamState& state,
                                              const StreamBatch& batch,
                                              std::vector<double> eps1,
                                              double dis);

class FixedMechanismState {
 public:
  static absl::StatusOr<FixedMechanismState> Create(
      std::vector<FixedRequirement> requirements, int dimension);

  const std::vector<FixedRequirement>& requirements() const {
    return requirements_;
  }
  size_t num_users() const { return requirements_.size(); }
  StreamState& stream() { return stream_; }
  const StreamState& stream() const { return stream_; }
  const BudgetLedger& ledger() const { return stream_.ledger; }
  const std::vector<PublicationRecord>& publications() const {
    return stream_.publications;
  }

  // Largest nullified-slot count t~_N seen at the last absorption step.
  double last_nullified_bound() const { return last_nullified_bound_; }
  void set_last_nullified_bound(double v) { last_nullified_bound_ = v; }

 private:
  FixedMechanismState(std::vector<FixedRequirement> requirements,
                      int dimension);

  std::vector<FixedRequirement> requirements_;
  StreamState stream_;
  double last_nullified_bound_ = 0.0;
};

absl::StatusOr<PublicationRecord> PbdStep(
    FixedMechanismState& state, const StreamBatch& batch, Rng& rng,
    std::optional<InjectedDecision> injected = std::nullopt);

absl::StatusOr<PublicationRecord> PbaStep(
    FixedMechanismState& state, const StreamBatch& batch, Rng& rng,
    std::optional<InjectedDecision> injected = std::nullopt);

enum class BaselineKind { kBd, kBa, kUniform };

// Non-personalized mechanisms. BD and BA are PBD and PBA with every user
// holding `shared`; Uniform releases the true histogram with Laplace noise
// of budget E/w at every slot.
absl::StatusOr<PublicationRecord> BaselineStep(
    BaselineKind kind, const FixedRequirement& shared,
    FixedMechanismState& state, const StreamBatch& batch, Rng& rng,
    std::optional<InjectedDecision> injected = std::nullopt);

}  // namespace pwevent

#endif  // PWEVENT_FIXED_MECHANISMS_FIXED_MECHANISM_H_
