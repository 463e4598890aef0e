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

#include "pwevent/dynamic_mechanisms/forward_window_set.h"

#include <algorithm>
#include <cstdlib>

namespace pwevent {

void ForwardWindowSet::Advance(int64_t t, int window, double budget) {
  current_slot_ = t;
  max_window_ = std::max(max_window_, window);
  std::erase_if(entries_,
                [t](const ForwardEntry& e) { return e.last_slot() < t; });
  entries_.push_back({t, window, budget});
  // Every live tau satisfies tau >= t - w(tau) + 1 >= t - max_window + 1.
  if (entries_.size() > static_cast<size_t>(max_window_)) std::abort();
}

std::vector<int64_t> NaiveForwardSet(std::span<const int> windows, int64_t t) {
  std::vector<int64_t> out;
  for (int64_t tau = 1; tau <= t; ++tau) {
    if (tau + windows[tau - 1] - 1 >= t) out.push_back(tau);
  }
  return out;
}

}  // namespace pwevent
