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

#ifndef PWEVENT_EVALUATION_METRICS_H_
#define PWEVENT_EVALUATION_METRICS_H_

#include "absl/status/statusor.h"
#include "pwevent/core/types.h"
#include "pwevent/evaluation/run_trace.h"

namespace pwevent {

// (1/d) ||r - c||^2 for one slot.
double SlotSquaredError(const CountVector& release, const CountVector& truth);

// Jensen-Shannon divergence between max(r, 0) and c on raw counts, natural
// log, with 0 log 0 = 0. normalize rescales both to distributions first;
// it exists for analysis only.
double SlotJensenShannon(const CountVector& release, const CountVector& truth,
                         bool normalize = false);

// Mean of SlotSquaredError over the trace. Despite the name this is a
// squared error, not a relative one.
absl::StatusOr<double> Amre(const RunTrace& trace);
absl::StatusOr<double> Ajsd(const RunTrace& trace, bool normalize = false);

}  // namespace pwevent

#endif  // PWEVENT_EVALUATION_METRICS_H_
