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

// Mechanisms for requirements that change every slot. Each user declares a
// backward requirement (the window ending now) and a forward one (the window
// starting now). A slot's spend must fit the backward window and every
// still-open forward window, each phase taking at most half of both.

#ifndef PWEVENT_DYNAMIC_MECHANISMS_DYNAMIC_MECHANISM_H_
#define PWEVENT_DYNAMIC_MECHANISMS_DYNAMIC_MECHANISM_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "pwevent/core/budget_ledger.h"
#include "pwevent/core/types.h"
#include "pwevent/dynamic_mechanisms/forward_window_set.h"
#include "pwevent/fixed_mechanisms/fixed_mechanism.h"
#include "pwevent/noise/rng.h"

namespace pwevent {

// Intermediate per-user bounds of the last step, kept for inspection.
struct DynamicUserDiagnostics {
  double forward_calculation = 0.0;
  double backward_calculation = 0.0;
  double forward_publication = 0.0;
  double backward_publication = 0.0;
  // Absorption only.
  double absorbable_forward = 0.0;
  double unused_forward = 0.0;
  double nullified_border = 0.0;
};

struct DynamicStepDiagnostics {
  std::vector<DynamicUserDiagnostics> users;
  // Largest nullified border over users (absorption only).
  double nullified_border = 0.0;
};

// Raises E_B when the spend already recorded in the trailing w_B-1 slots
// leaves either phase with a negative backward remainder. The result is the
// smallest E_B for which both halves stay feasible.
DynamicRequirement ProjectBackwardRequirement(
    const DynamicRequirement& declared, const BudgetLedger& ledger, size_t user,
    int64_t t, bool* projected = nullptr);

class DynamicMechanismState {
 public:
  // With verify_sums every forward window sum is recomputed by a plain loop
  // and compared; a mismatch fails the step.
  static absl::StatusOr<DynamicMechanismState> Create(size_t num_users,
                                                      int dimension,
                                                      bool verify_sums = false);

  size_t num_users() const { return forward_.size(); }
  StreamState& stream() { return stream_; }
  const StreamState& stream() const { return stream_; }
  const BudgetLedger& ledger() const { return stream_.ledger; }
  const std::vector<PublicationRecord>& publications() const {
    return stream_.publications;
  }
  const ForwardWindowSet& forward(size_t user) const { return forward_[user]; }

  // Requirements after projection, indexed [slot - 1][user].
  const std::vector<std::vector<DynamicRequirement>>& effective() const {
    return effective_;
  }
  const std::vector<std::vector<bool>>& projected() const { return projected_; }
  const DynamicStepDiagnostics& last_diagnostics() const {
    return diagnostics_;
  }

 private:
  friend absl::Status AdvanceForwardWindows(
      DynamicMechanismState& state, int64_t t,
      std::span<const DynamicRequirement> declared);
  friend absl::StatusOr<PublicationRecord> DynamicStep(
      bool absorb, DynamicMechanismState& state, const StreamBatch& batch,
      std::span<const DynamicRequirement> declared, Rng& rng,
      std::optional<InjectedDecision> injected);

  DynamicMechanismState(size_t num_users, int dimension, bool verify_sums);

  StreamState stream_;
  std::vector<ForwardWindowSet> forward_;
  std::vector<std::vector<DynamicRequirement>> effective_;
  std::vector<std::vector<bool>> projected_;
  DynamicStepDiagnostics diagnostics_;
  bool verify_sums_ = false;
};

// Projects slot t's declarations, records them, and advances every user's
// forward window set. Called by the step functions before any budget is
// computed.
absl::Status AdvanceForwardWindows(
    DynamicMechanismState& state, int64_t t,
    std::span<const DynamicRequirement> declared);

absl::StatusOr<PublicationRecord> DynamicStep(
    bool absorb, DynamicMechanismState& state, const StreamBatch& batch,
    std::span<const DynamicRequirement> declared, Rng& rng,
    std::optional<InjectedDecision> injected);

inline absl::StatusOr<PublicationRecord> DpbdStep(
    DynamicMechanismState& state, const StreamBatch& batch,
    std::span<const DynamicRequirement> declared, Rng& rng,
    std::optional<InjectedDecision> injected = std::nullopt) {
  return DynamicStep(false, state, batch, declared, rng, injected);
}

inline absl::StatusOr<PublicationRecord> DpbaStep(
    DynamicMechanismState& state, const StreamBatch& batch,
    std::span<const DynamicRequirement> declared, Rng& rng,
    std::optional<InjectedDecision> injected = std::nullopt) {
  return DynamicStep(true, state, batch, declared, rng, injected);
}

}  // namespace pwevent

#endif  // PWEVENT_DYNAMIC_MECHANISMS_DYNAMIC_MECHANISM_H_
