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

#include "pwevent/sampling/sampling_mechanism.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace pwevent {
namespace {

double ErrorAt(const BudgetQuantityPairs& pairs, double eps_theta) {
  const double denom = std::expm1(eps_theta);
  double variance = 0.0;
  double bias = 0.0;
  for (const BudgetPair& p : pairs.pairs) {
    if (p.eps >= eps_theta) break;
    const double q = std::expm1(p.eps) / denom;
    const double n = static_cast<double>(p.count);
    variance += n * q * (1.0 - q);
    bias += n * (1.0 - q);
  }
  return variance + bias * bias;
}

}  // namespace

double InclusionProbability(double eps, double eps_theta) {
  if (eps <= 0.0) return 0.0;
  if (eps >= eps_theta) return 1.0;
  return std::expm1(eps) / std::expm1(eps_theta);
}

absl::StatusOr<double> SamplingError(const BudgetQuantityPairs& pairs,
                                     double eps_theta) {
  if (!(eps_theta > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps_theta must be positive, got ", eps_theta));
  }
  return ErrorAt(pairs, eps_theta);
}

std::optional<ObsResult> OptimalBudgetSelection(std::span<const double> eps) {
  return OptimalBudgetSelection(CollapseBudgets(eps));
}

std::optional<ObsResult> OptimalBudgetSelection(
    const BudgetQuantityPairs& pairs) {
  if (pairs.empty()) return std::nullopt;
  ObsResult result;
  result.per_candidate_errors.reserve(pairs.pairs.size());
  bool have = false;
  for (const BudgetPair& candidate : pairs.pairs) {
    const double theta = candidate.eps;
    const double err = ErrorAt(pairs, theta) + 2.0 / (theta * theta);
    result.per_candidate_errors.emplace_back(theta, err);
    // Candidates arrive in increasing order, so demanding a strict
    // improvement beyond the tolerance keeps the smallest on ties.
    if (!have || err < result.err_min - kBudgetTolerance) {
      result.eps_opt = theta;
      result.err_min = err;
      have = true;
    }
  }
  return result;
}

CountVector SampleHistogram(const StreamBatch& batch,
                            std::span<const double> eps, double eps_opt,
                            Rng& rng) {
  CountVector counts(batch.dimension());
  const double denom = std::expm1(eps_opt);
  const auto& buckets = batch.buckets();
  for (size_t i = 0; i < buckets.size(); ++i) {
    const int32_t b = buckets[i];
    if (b == StreamBatch::kAbsent) continue;
    const double e = eps[i];
    if (e <= 0.0) continue;
    if (e < eps_opt && !rng.Bernoulli(std::expm1(e) / denom)) continue;
    counts[b] += 1.0;
  }
  return counts;
}

CountVector Disturb(const CountVector& sampled, double eps_opt, Rng& rng) {
  CountVector out = sampled;
  const double scale = 1.0 / eps_opt;
  for (size_t j = 0; j < out.dimension(); ++j) out[j] += rng.Laplace(scale);
  return out;
}

absl::StatusOr<double> SamplingErrorUpperBound(const BudgetQuantityPairs& pairs,
                                               double sensitivity) {
  if (pairs.empty()) {
    return absl::InvalidArgumentError("budget pairs are empty");
  }
  if (!(sensitivity > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sensitivity must be positive, got ", sensitivity));
  }
  const double lo = pairs.pairs.front().eps;
  const double hi = pairs.pairs.back().eps;
  const double n = static_cast<double>(pairs.total());
  const double n_a = static_cast<double>(pairs.pairs.back().count);
  const double i2 = sensitivity * sensitivity;
  const double z = (n - n_a) * (n - n_a + 0.25);
  return std::min(2.0 * i2 / (lo * lo), z + 2.0 * i2 / (hi * hi));
}

}  // namespace pwevent
