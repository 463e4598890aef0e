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

#include "pwevent/harness/requirements.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"

namespace pwevent {
namespace {

size_t UniformIndex(Rng& rng, size_t n) {
  return std::min(n - 1, static_cast<size_t>(rng.Uniform01() * n));
}

template <typename T>
std::vector<T> Sorted(std::span<const T> values) {
  std::vector<T> out(values.begin(), values.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<double> DefaultBudgetDomain(double budget) {
  // Rounded so that 0.2 + 0.2 k lands on the decimal grid values exactly.
  auto grid = [](double v) { return std::round(v * 1e9) / 1e9; };
  std::vector<double> out = {grid(budget)};
  for (int k = 1; grid(budget + 0.2 * k) <= 1.0 + kBudgetTolerance; ++k) {
    out.push_back(grid(budget + 0.2 * k));
  }
  return out;
}

std::vector<int> DefaultWindowDomain(int window) {
  std::vector<int> out;
  for (int w = 40; w < window; w += 40) out.push_back(w);
  out.push_back(window);
  return out;
}

absl::StatusOr<std::vector<FixedRequirement>> AssignRequirements(
    int64_t n, std::span<const double> budget_domain,
    std::span<const int> window_domain, double ratio, uint64_t seed) {
  if (n < 0) return absl::InvalidArgumentError("negative user count");
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("ratio must lie in [0, 1], got ", ratio));
  }
  if (budget_domain.empty() || window_domain.empty()) {
    return absl::InvalidArgumentError("requirement domains must be nonempty");
  }
  const std::vector<double> budgets = Sorted(budget_domain);
  const std::vector<int> windows = Sorted(window_domain);
  const FixedRequirement low{windows.front(), budgets.front()};
  if (absl::Status s = low.Validate(); !s.ok()) return s;
  std::vector<double> other_budgets(budgets.begin() + 1, budgets.end());
  std::vector<int> other_windows(windows.begin() + 1, windows.end());
  if (other_budgets.empty()) other_budgets = budgets;
  if (other_windows.empty()) other_windows = windows;

  const int64_t designated = std::llround(ratio * static_cast<double>(n));
  std::vector<FixedRequirement> out;
  out.reserve(n);
  for (int64_t i = 0; i < n; ++i) {
    if (i < designated) {
      out.push_back(low);
      continue;
    }
    const int64_t j = i - designated;
    out.push_back({other_windows[j % other_windows.size()],
                   other_budgets[j % other_budgets.size()]});
  }
  Rng rng(DeriveSeed(seed, {0x61737369676e}));
  for (size_t k = out.size(); k > 1; --k) {
    std::swap(out[k - 1], out[UniformIndex(rng, k)]);
  }
  return out;
}

RequirementSchedule::RequirementSchedule(ScheduleSpec spec,
                                         std::vector<FixedRequirement> base,
                                         std::vector<double> budget_domain,
                                         std::vector<int> window_domain,
                                         uint64_t seed)
    : spec_(std::move(spec)),
      base_(std::move(base)),
      rng_(DeriveSeed(seed, {0x7363686564})) {
  std::sort(budget_domain.begin(), budget_domain.end());
  std::sort(window_domain.begin(), window_domain.end());
  budgets_.resize(base_.size());
  windows_.resize(base_.size());
  for (size_t i = 0; i < base_.size(); ++i) {
    for (double e : budget_domain) {
      if (e >= base_[i].budget - kBudgetTolerance) budgets_[i].push_back(e);
    }
    for (int w : window_domain) {
      if (w <= base_[i].window) windows_[i].push_back(w);
    }
    if (budgets_[i].empty()) budgets_[i].push_back(base_[i].budget);
    if (windows_[i].empty()) windows_[i].push_back(base_[i].window);
  }
  current_.resize(base_.size());
}

absl::StatusOr<RequirementSchedule> RequirementSchedule::Create(
    ScheduleSpec spec, std::vector<FixedRequirement> base,
    std::vector<double> budget_domain, std::vector<int> window_domain,
    uint64_t seed) {
  if (spec.kind == ScheduleSpec::Kind::kPeriodic && spec.period < 1) {
    return absl::InvalidArgumentError("schedule period must be at least 1");
  }
  if (spec.kind == ScheduleSpec::Kind::kScripted) {
    if (spec.script.empty()) {
      return absl::InvalidArgumentError("scripted schedule has no slots");
    }
    for (const auto& slot : spec.script) {
      if (slot.size() != 1 && slot.size() != base.size()) {
        return absl::InvalidArgumentError(
            absl::StrCat("scripted slot lists ", slot.size(),
                         " requirements for ", base.size(), " users"));
      }
      for (const DynamicRequirement& r : slot) {
        if (absl::Status s = r.Validate(); !s.ok()) return s;
      }
    }
  }
  DynamicRequirement backward{spec.backward_window, spec.backward_budget, 1,
                              1.0};
  if (absl::Status s = backward.Validate(); !s.ok()) return s;
  return RequirementSchedule(std::move(spec), std::move(base),
                             std::move(budget_domain), std::move(window_domain),
                             seed);
}

DynamicRequirement RequirementSchedule::Draw(size_t user) {
  const std::vector<double>& b = budgets_[user];
  const std::vector<int>& w = windows_[user];
  DynamicRequirement r;
  r.backward_window = spec_.backward_window;
  r.backward_budget = spec_.backward_budget;
  r.forward_budget = b[UniformIndex(rng_, b.size())];
  r.forward_window = w[UniformIndex(rng_, w.size())];
  return r;
}

const std::vector<DynamicRequirement>& RequirementSchedule::At(int64_t t) {
  const size_t n = base_.size();
  switch (spec_.kind) {
    case ScheduleSpec::Kind::kConstant:
      for (size_t i = 0; i < n; ++i) {
        current_[i] = {spec_.backward_window, spec_.backward_budget,
                       base_[i].window, base_[i].budget};
      }
      break;
    case ScheduleSpec::Kind::kRandom:
      for (size_t i = 0; i < n; ++i) current_[i] = Draw(i);
      break;
    case ScheduleSpec::Kind::kPeriodic: {
      const size_t k = static_cast<size_t>((t - 1) % spec_.period);
      if (pattern_.size() <= k) {
        std::vector<DynamicRequirement> slot(n);
        for (size_t i = 0; i < n; ++i) slot[i] = Draw(i);
        pattern_.push_back(std::move(slot));
      }
      current_ = pattern_[k];
      break;
    }
    case ScheduleSpec::Kind::kScripted: {
      const auto& slot = spec_.script[(t - 1) % spec_.script.size()];
      for (size_t i = 0; i < n; ++i) {
        current_[i] = slot.size() == 1 ? slot[0] : slot[i];
      }
      break;
    }
  }
  return current_;
}

}  // namespace pwevent
