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

#ifndef PWEVENT_FIXED_MECHANISMS_DISSIMILARITY_H_
#define PWEVENT_FIXED_MECHANISMS_DISSIMILARITY_H_

#include <span>

#include "absl/status/statusor.h"
#include "pwevent/core/types.h"
#include "pwevent/noise/rng.h"

namespace pwevent {

// Private mean absolute deviation between the sampled current histogram and
// the last non-null release. Returns +inf when every eps1 entry is zero so
// that the publication phase alone decides.
absl::StatusOr<double> Dissimilarity(const StreamBatch& batch,
                                     std::span<const double> eps1,
                                     const CountVector& last_nonnull, int d,
                                     Rng& rng);

}  // namespace pwevent

#endif  // PWEVENT_FIXED_MECHANISMS_DISSIMILARITY_H_
