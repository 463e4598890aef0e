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

#include "pwevent/noise/laplace.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace pwevent {

double LaplaceFromUniform(double u, double scale) {
  if (u == 0.0) return 0.0;
  const double sign = u > 0.0 ? 1.0 : -1.0;
  return -scale * sign * std::log1p(-2.0 * std::fabs(u));
}

absl::StatusOr<double> SampleLaplace(double scale, Rng& rng) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be positive, got ", scale));
  }
  return rng.Laplace(scale);
}

absl::StatusOr<double> NoiseError(double eps_theta) {
  if (!(eps_theta > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("eps_theta must be positive, got ", eps_theta));
  }
  return 2.0 / (eps_theta * eps_theta);
}

}  // namespace pwevent
