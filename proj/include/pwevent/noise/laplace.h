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

#ifndef PWEVENT_NOISE_LAPLACE_H_
#define PWEVENT_NOISE_LAPLACE_H_

#include "absl/status/statusor.h"
#include "pwevent/noise/rng.h"

namespace pwevent {

// Inverse CDF of Laplace(0, scale) evaluated at u in (-1/2, 1/2).
double LaplaceFromUniform(double u, double scale);

absl::StatusOr<double> SampleLaplace(double scale, Rng& rng);

// Variance of the Laplace mechanism for a sensitivity-1 count: 2/eps^2.
absl::StatusOr<double> NoiseError(double eps_theta);

}  // namespace pwevent

#endif  // PWEVENT_NOISE_LAPLACE_H_
