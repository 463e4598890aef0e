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

#include "pwevent/dynamic_mechanisms/dynamic_mechanism.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "pwevent/fixed_mechanisms/dissimilarity.h"

namespace pwevent {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

DynamicRequirement ProjectBackwardRequirement(
    const DynamicRequirement& declared, const BudgetLedger& ledger, size_t user,
    int64_t t, bool* projected) {
  const int64_t from = t - declared.backward_window + 1;
  const double s1 = ledger.ClampedSum(user, Phase::kCalculation, from, t - 1);
  const double s2 = ledger.ClampedSum(user, Phase::kPublication, from, t - 1);
  const double needed = 2.0 * std::max(s1, s2);
  DynamicRequirement out = declared;
  const bool raise = declared.backward_budget < needed - kBudgetTolerance;
  if (raise) out.backward_budget = needed;
  if (projected != nullptr) *projected = raise;
  return out;
}

DynamicMechanismState::DynamicMechanismState(size_t num_users, int dimension,
                                             bool verify_sums)
    : stream_(num_users, dimension),
      forward_(num_users),
      verify_sums_(verify_sums) {}

absl::StatusOr<DynamicMechanismState> DynamicMechanismState::Create(
    size_t num_users, int dimension, bool verify_sums) {
  if (dimension <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be positive, got ", dimension));
  }
  return DynamicMechanismState(num_users, dimension, verify_sums);
}

absl::Status AdvanceForwardWindows(
    DynamicMechanismState& state, int64_t t,
    std::span<const DynamicRequirement> declared) {
  const size_t n = state.num_users();
  if (declared.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "got ", declared.size(), " requirements for ", n, " users"));
  }
  if (t != state.stream_.next_slot() ||
      static_cast<int64_t>(state.effective_.size()) != t - 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("forward windows advanced out of order at slot ", t));
  }
  std::vector<DynamicRequirement> effective(n);
  std::vector<bool> projected(n);
  for (size_t i = 0; i < n; ++i) {
    absl::Status s = declared[i].Validate();
    if (!s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("user ", i, " at slot ", t, ": ", s.message()));
    }
    bool flag = false;
    effective[i] =
        ProjectBackwardRequirement(declared[i], state.ledger(), i, t, &flag);
    projected[i] = flag;
    state.forward_[i].Advance(t, effective[i].forward_window,
                              effective[i].forward_budget);
  }
  state.effective_.push_back(std::move(effective));
  state.projected_.push_back(std::move(projected));
  return absl::OkStatus();
}

absl::StatusOr<PublicationRecord> DynamicStep(
    bool absorb, DynamicMechanismState& state, const StreamBatch& batch,
    std::span<const DynamicRequirement> declared, Rng& rng,
    std::optional<InjectedDecision> injected) {
  StreamState& stream = state.stream_;
  absl::Status s = CheckBatch(stream, batch);
  if (!s.ok()) return s;
  const int64_t t = batch.slot();
  s = AdvanceForwardWindows(state, t, declared);
  if (!s.ok()) return s;

  const size_t n = state.num_users();
  const BudgetLedger& ledger = stream.ledger;
  const std::vector<DynamicRequirement>& reqs = state.effective_.back();
  DynamicStepDiagnostics& diag = state.diagnostics_;
  diag.users.assign(n, DynamicUserDiagnostics{});
  diag.nullified_border = 0.0;

  // Publication-phase spend over [tau, t-1].
  auto forward_spent = [&](size_t i, int64_t tau) -> absl::StatusOr<double> {
    const double fast = ledger.ClampedSum(i, Phase::kPublication, tau, t - 1);
    if (state.verify_sums_) {
      double slow = 0.0;
      for (int64_t k = tau; k <= t - 1; ++k) {
        slow += ledger.Get(i, Phase::kPublication, k);
      }
      if (std::fabs(slow - fast) > kBudgetTolerance) {
        return absl::InternalError(absl::StrCat("forward sum drift for user ",
                                                i, " tau ", tau, ": ", fast,
                                                " vs ", slow));
      }
    }
    return fast;
  };

  std::vector<double> eps1(n);
  for (size_t i = 0; i < n; ++i) {
    double fwd = kInf;
    for (const ForwardEntry& e : state.forward_[i].entries()) {
      fwd = std::min(fwd, e.Share());
    }
    const DynamicRequirement& r = reqs[i];
    const double bwd = r.backward_budget / 2.0 -
                       ledger.ClampedSum(i, Phase::kCalculation,
                                         t - r.backward_window + 1, t - 1);
    diag.users[i].forward_calculation = fwd;
    diag.users[i].backward_calculation = bwd;
    eps1[i] = std::max(0.0, std::min(fwd, bwd));
  }
  absl::StatusOr<double> dis = Dissimilarity(
      batch, eps1, stream.last_nonnull_release, stream.dimension, rng);
  if (!dis.ok()) return dis.status();

  std::vector<double> eps2(n);
  std::vector<double> unused_forward(n, kInf);
  std::vector<double> absorbable(n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    DynamicUserDiagnostics& u = diag.users[i];
    const DynamicRequirement& r = reqs[i];
    double border = -kInf;
    for (const ForwardEntry& e : state.forward_[i].entries()) {
      absl::StatusOr<double> spent = forward_spent(i, e.tau);
      if (!spent.ok()) return spent.status();
      unused_forward[i] = std::min(unused_forward[i], e.budget / 2.0 - *spent);
      if (absorb) {
        const double b = *spent / e.Share() + static_cast<double>(e.tau) - 1.0;
        border = std::max(border, b);
        absorbable[i] =
            std::max(absorbable[i], (static_cast<double>(t) - b) * e.Share());
      }
    }
    u.unused_forward = unused_forward[i];
    u.forward_publication = unused_forward[i] / 2.0;
    u.backward_publication =
        r.backward_budget / 2.0 - ledger.ClampedSum(i, Phase::kPublication,
                                                    t - r.backward_window + 1,
                                                    t - 1);
    if (absorb) {
      u.nullified_border = border;
      u.absorbable_forward = absorbable[i];
      diag.nullified_border = std::max(diag.nullified_border, border);
    }
  }

  if (absorb &&
      static_cast<double>(t) <= diag.nullified_border + kBudgetTolerance) {
    return NullifyStep(stream, batch, std::move(eps1), *dis);
  }

  for (size_t i = 0; i < n; ++i) {
    const DynamicUserDiagnostics& u = diag.users[i];
    const double fwd = absorb ? std::min(u.absorbable_forward, u.unused_forward)
                              : u.forward_publication;
    eps2[i] = std::max(0.0, std::min(fwd, u.backward_publication));
  }
  return FinishStep(stream, batch, std::move(eps1), std::move(eps2), *dis,
                    injected, rng);
}

}  // namespace pwevent
