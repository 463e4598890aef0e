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

#ifndef PWEVENT_DYNAMIC_MECHANISMS_FORWARD_WINDOW_SET_H_
#define PWEVENT_DYNAMIC_MECHANISMS_FORWARD_WINDOW_SET_H_

#include <cstdint>
#include <span>
#include <vector>

namespace pwevent {

// Forward requirement declared at slot tau.
struct ForwardEntry {
  int64_t tau = 0;
  int window = 1;
  double budget = 0.0;

  int64_t last_slot() const { return tau + window - 1; }
  double Share() const { return budget / (2.0 * window); }
};

// Slots whose forward window still covers the current slot, i.e.
// { tau <= t : tau + w_F(tau) - 1 >= t }, kept in increasing tau.
class ForwardWindowSet {
 public:
  // Adds slot t and evicts every entry whose window ended before t.
  void Advance(int64_t t, int window, double budget);

  const std::vector<ForwardEntry>& entries() const { return entries_; }
  int64_t current_slot() const { return current_slot_; }
  // Largest forward window declared so far; bounds entries().size().
  int max_window() const { return max_window_; }

 private:
  std::vector<ForwardEntry> entries_;
  int64_t current_slot_ = 0;
  int max_window_ = 0;
};

// Definitional rebuild used to cross-check the queue. windows[k-1] is the
// forward window declared at slot k.
std::vector<int64_t> NaiveForwardSet(std::span<const int> windows, int64_t t);

}  // namespace pwevent

#endif  // PWEVENT_DYNAMIC_MECHANISMS_FORWARD_WINDOW_SET_H_
