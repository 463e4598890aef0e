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

#include "pwevent/fixed_mechanisms/fixed_mechanism.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pwevent/fixed_mechanisms/dissimilarity.h"
#include "pwevent/sampling/sampling_mechanism.h"

namespace pwevent {

absl::Status CheckBatch(const StreamState& state, const StreamBatch& batch) {
  if (batch.num_users() != state.ledger.num_users()) {
    return absl::InvalidArgumentError(
        absl::StrCat("batch has ", batch.num_users(), " users, mechanism has ",
                     state.ledger.num_users()));
  }
  if (batch.dimension() != state.dimension) {
    return absl::InvalidArgumentError(
        absl::StrCat("batch dimension ", batch.dimension(),
                     " does not match mechanism dimension ", state.dimension));
  }
  if (batch.slot() != state.next_slot()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "expected slot ", state.next_slot(), ", got ", batch.slot()));
  }
  return batch.Validate();
}

absl::StatusOr<PublicationRecord> FinishStep(
    StreamState& state, const StreamBatch& batch, std::vector<double> eps1,
    std::vector<double> eps2, double dis,
    std::optional<InjectedDecision> injected, Rng& rng) {
  PublicationRecord record;
  record.slot = batch.slot();
  record.dis = dis;

  std::optional<ObsResult> obs = OptimalBudgetSelection(eps2);
  bool publish = false;
  Decision null_decision = Decision::kSkipped;
  if (obs.has_value()) {
    record.err_opt = obs->err_min;
    if (injected.has_value()) {
      publish = *injected == InjectedDecision::kPublish;
      if (!publish) null_decision = Decision::kForced;
    } else {
      publish = dis > std::sqrt(obs->err_min);
    }
  }

  if (publish) {
    const CountVector sampled = SampleHistogram(batch, eps2, obs->eps_opt, rng);
    record.release = Disturb(sampled, obs->eps_opt, rng);
    record.decision = Decision::kNonNull;
    record.eps_opt = obs->eps_opt;
    state.last_nonnull_slot = record.slot;
    state.last_nonnull_release = record.release;
  } else {
    std::fill(eps2.begin(), eps2.end(), 0.0);
    record.release = state.last_release;
    record.decision = null_decision;
  }

  absl::Status s = state.ledger.Append(eps1, eps2);
  if (!s.ok()) return s;
  record.eps2 = std::move(eps2);
  state.last_release = record.release;
  state.publications.push_back(record);
  return record;
}

absl::StatusOr<PublicationRecord> NullifyStep(StreamState& state,
                                              const StreamBatch& batch,
                                              std::vector<double> eps1,
                                              double dis) {
  PublicationRecord record;
  record.slot = batch.slot();
  record.dis = dis;
  record.decision = Decision::kNullified;
  record.release = state.last_release;
  record.eps2.assign(eps1.size(), 0.0);
  absl::Status s = state.ledger.Append(eps1, record.eps2);
  if (!s.ok()) return s;
  state.publications.push_back(record);
  return record;
}

FixedMechanismState::FixedMechanismState(
    std::vector<FixedRequirement> requirements, int dimension)
    : requirements_(std::move(requirements)),
      stream_(requirements_.size(), dimension) {}

absl::StatusOr<FixedMechanismState> FixedMechanismState::Create(
    std::vector<FixedRequirement> requirements, int dimension) {
  if (dimension <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be positive, got ", dimension));
  }
  for (size_t i = 0; i < requirements.size(); ++i) {
    absl::Status s = requirements[i].Validate();
    if (!s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("user ", i, ": ", s.message()));
    }
  }
  return FixedMechanismState(std::move(requirements), dimension);
}

namespace {

std::vector<double> CalculationBudgets(const FixedMechanismState& state) {
  std::vector<double> eps1(state.num_users());
  for (size_t i = 0; i < eps1.size(); ++i) {
    eps1[i] = state.requirements()[i].Share();
  }
  return eps1;
}

}  // namespace

absl::StatusOr<PublicationRecord> PbdStep(
    FixedMechanismState& state, const StreamBatch& batch, Rng& rng,
    std::optional<InjectedDecision> injected) {
  StreamState& stream = state.stream();
  absl::Status s = CheckBatch(stream, batch);
  if (!s.ok()) return s;
  const int64_t t = batch.slot();

  std::vector<double> eps1 = CalculationBudgets(state);
  absl::StatusOr<double> dis = Dissimilarity(
      batch, eps1, stream.last_nonnull_release, stream.dimension, rng);
  if (!dis.ok()) return dis.status();

  std::vector<double> eps2(state.num_users());
  for (size_t i = 0; i < eps2.size(); ++i) {
    const FixedRequirement& req = state.requirements()[i];
    const double spent = stream.ledger.ClampedSum(i, Phase::kPublication,
                                                  t - req.window + 1, t - 1);
    eps2[i] = std::max(0.0, (req.budget / 2.0 - spent) / 2.0);
  }
  return FinishStep(stream, batch, std::move(eps1), std::move(eps2), *dis,
                    injected, rng);
}

absl::StatusOr<PublicationRecord> PbaStep(
    FixedMechanismState& state, const StreamBatch& batch, Rng& rng,
    std::optional<InjectedDecision> injected) {
  StreamState& stream = state.stream();
  absl::Status s = CheckBatch(stream, batch);
  if (!s.ok()) return s;
  const int64_t t = batch.slot();
  const size_t n = state.num_users();

  std::vector<double> eps1 = CalculationBudgets(state);
  absl::StatusOr<double> dis = Dissimilarity(
      batch, eps1, stream.last_nonnull_release, stream.dimension, rng);
  if (!dis.ok()) return dis.status();

  // Shares still owed for the last absorbing release, per user.
  std::vector<double> nullified(n, 0.0);
  double bound = 0.0;
  const int64_t l = stream.last_nonnull_slot.value_or(0);
  if (stream.last_nonnull_slot.has_value()) {
    for (size_t i = 0; i < n; ++i) {
      nullified[i] = stream.ledger.Get(i, Phase::kPublication, l) /
                         state.requirements()[i].Share() -
                     1.0;
    }
    bound = *std::max_element(nullified.begin(), nullified.end());
  }
  state.set_last_nullified_bound(bound);
  if (stream.last_nonnull_slot.has_value() &&
      static_cast<double>(t - l) <= bound + kBudgetTolerance) {
    return NullifyStep(stream, batch, std::move(eps1), *dis);
  }

  std::vector<double> eps2(n);
  for (size_t i = 0; i < n; ++i) {
    const FixedRequirement& req = state.requirements()[i];
    const double absorbed =
        std::max(static_cast<double>(t - l) - nullified[i], 0.0);
    eps2[i] = req.Share() * std::min(absorbed, static_cast<double>(req.window));
  }
  return FinishStep(stream, batch, std::move(eps1), std::move(eps2), *dis,
                    injected, rng);
}

absl::StatusOr<PublicationRecord> BaselineStep(
    BaselineKind kind, const FixedRequirement& shared,
    FixedMechanismState& state, const StreamBatch& batch, Rng& rng,
    std::optional<InjectedDecision> injected) {
  for (const FixedRequirement& req : state.requirements()) {
    if (!(req == shared)) {
      return absl::InvalidArgumentError(
          "baselines require every user to hold the shared requirement");
    }
  }
  switch (kind) {
    case BaselineKind::kBd:
      return PbdStep(state, batch, rng, injected);
    case BaselineKind::kBa:
      return PbaStep(state, batch, rng, injected);
    case BaselineKind::kUniform: {
      StreamState& stream = state.stream();
      absl::Status s = CheckBatch(stream, batch);
      if (!s.ok()) return s;
      const size_t n = state.num_users();
      const double per_slot = shared.budget / shared.window;
      return FinishStep(stream, batch, std::vector<double>(n, 0.0),
                        std::vector<double>(n, per_slot),
                        std::numeric_limits<double>::infinity(),
                        InjectedDecision::kPublish, rng);
    }
  }
  return absl::InternalError("unknown baseline");
}

}  // namespace pwevent
