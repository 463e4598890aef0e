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

// Personalized sampling mechanism: users whose budget is below a threshold
// eps_theta join the sample with probability (e^eps - 1)/(e^theta - 1), the
// rest always join, and the sampled histogram gets Laplace(1/theta) noise.

#ifndef PWEVENT_SAMPLING_SAMPLING_MECHANISM_H_
#define PWEVENT_SAMPLING_SAMPLING_MECHANISM_H_

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "pwevent/core/budget_pairs.h"
#include "pwevent/core/types.h"
#include "pwevent/noise/rng.h"

namespace pwevent {

struct ObsResult {
  double eps_opt = 0.0;
  double err_min = 0.0;
  // (candidate threshold, total error) in increasing threshold order.
  std::vector<std::pair<double, double>> per_candidate_errors;
};

// Inclusion probability of a user with budget eps under threshold theta.
double InclusionProbability(double eps, double eps_theta);

// Variance plus squared bias of the sampled count at threshold eps_theta.
absl::StatusOr<double> SamplingError(const BudgetQuantityPairs& pairs,
                                     double eps_theta);

// Picks the candidate threshold with the least sampling + noise error,
// preferring the smallest one on ties. Returns nullopt when no budget is
// positive; callers must then emit a null release.
std::optional<ObsResult> OptimalBudgetSelection(std::span<const double> eps);
std::optional<ObsResult> OptimalBudgetSelection(
    const BudgetQuantityPairs& pairs);

// Histogram of the sampled users (no noise yet).
CountVector SampleHistogram(const StreamBatch& batch,
                            std::span<const double> eps, double eps_opt,
                            Rng& rng);

// Adds Laplace(1/eps_opt) to every bucket. No clipping.
CountVector Disturb(const CountVector& sampled, double eps_opt, Rng& rng);

// Closed-form upper bound on the error of the mechanism over `pairs` with
// query sensitivity `sensitivity`.
absl::StatusOr<double> SamplingErrorUpperBound(const BudgetQuantityPairs& pairs,
                                               double sensitivity);

}  // namespace pwevent

#endif  // PWEVENT_SAMPLING_SAMPLING_MECHANISM_H_
