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

#ifndef PWEVENT_DATAGEN_GENERATORS_H_
#define PWEVENT_DATAGEN_GENERATORS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pwevent/core/types.h"

namespace pwevent {

// Probability that a user's binary value is 1, for slots 1..T (p[0] is
// slot 1).
struct ProbabilitySequence {
  std::string kind;
  std::vector<double> p;
  uint64_t seed = 0;
  // Generator parameters, for manifests.
  std::vector<std::pair<std::string, double>> params;
  // Slots where the random walk left [0, 1] and was clipped (TLNS only).
  int64_t clip_count = 0;
};

struct TlnsParams {
  double initial = 0.05;
  double stddev = 0.0025;
  bool zero_noise = false;
};

// Clipped Gaussian random walk.
absl::StatusOr<ProbabilitySequence> GenerateTlns(int64_t slots, uint64_t seed,
                                                 const TlnsParams& params = {});
// 0.05 sin(0.01 t) + 0.075.
absl::StatusOr<ProbabilitySequence> GenerateSin(int64_t slots);
// 0.25 / (1 + exp(-0.01 t)).
absl::StatusOr<ProbabilitySequence> GenerateLog(int64_t slots);

// Bucket 1 means the value is 1, bucket 0 means it is 0.
absl::StatusOr<std::vector<StreamBatch>> RealizeBinaryStream(
    const ProbabilitySequence& p, int64_t num_users, uint64_t seed);

}  // namespace pwevent

#endif  // PWEVENT_DATAGEN_GENERATORS_H_
