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

#include "pwevent/fixed_mechanisms/dissimilarity.h"

#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "pwevent/sampling/sampling_mechanism.h"

namespace pwevent {

absl::StatusOr<double> Dissimilarity(const StreamBatch& batch,
                                     std::span<const double> eps1,
                                     const CountVector& last_nonnull, int d,
                                     Rng& rng) {
  if (d <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension must be positive, got ", d));
  }
  if (last_nonnull.dimension() != static_cast<size_t>(d) ||
      batch.dimension() != d) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension mismatch: d=", d, " batch=", batch.dimension(),
                     " last release=", last_nonnull.dimension()));
  }
  if (eps1.size() != batch.num_users()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "got ", eps1.size(), " budgets for ", batch.num_users(), " users"));
  }
  std::optional<ObsResult> obs = OptimalBudgetSelection(eps1);
  if (!obs.has_value()) return std::numeric_limits<double>::infinity();

  const CountVector sampled = SampleHistogram(batch, eps1, obs->eps_opt, rng);
  double dis = 0.0;
  for (int j = 0; j < d; ++j) dis += std::fabs(sampled[j] - last_nonnull[j]);
  dis /= d;
  return dis + rng.Laplace(1.0 / (d * obs->eps_opt));
}

}  // namespace pwevent
