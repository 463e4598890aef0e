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

#include "pwevent/datagen/generators.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "pwevent/noise/rng.h"

namespace pwevent {
namespace {

absl::Status CheckSlots(int64_t slots) {
  if (slots < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("need at least one slot, got ", slots));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<ProbabilitySequence> GenerateTlns(int64_t slots, uint64_t seed,
                                                 const TlnsParams& params) {
  if (absl::Status s = CheckSlots(slots); !s.ok()) return s;
  ProbabilitySequence out;
  out.kind = "tlns";
  out.seed = seed;
  out.params = {{"p0", params.initial}, {"stddev", params.stddev}};
  out.p.reserve(slots);
  Rng rng(DeriveSeed(seed, {0x746c6e73}));
  double p = params.initial;
  for (int64_t t = 0; t < slots; ++t) {
    if (!params.zero_noise) p += rng.Gaussian(0.0, params.stddev);
    if (p < 0.0 || p > 1.0) {
      p = p < 0.0 ? 0.0 : 1.0;
      ++out.clip_count;
    }
    out.p.push_back(p);
  }
  return out;
}

absl::StatusOr<ProbabilitySequence> GenerateSin(int64_t slots) {
  if (absl::Status s = CheckSlots(slots); !s.ok()) return s;
  ProbabilitySequence out;
  out.kind = "sin";
  out.params = {{"amplitude", 0.05}, {"omega", 0.01}, {"offset", 0.075}};
  out.p.reserve(slots);
  for (int64_t t = 1; t <= slots; ++t) {
    out.p.push_back(0.05 * std::sin(0.01 * t) + 0.075);
  }
  return out;
}

absl::StatusOr<ProbabilitySequence> GenerateLog(int64_t slots) {
  if (absl::Status s = CheckSlots(slots); !s.ok()) return s;
  ProbabilitySequence out;
  out.kind = "log";
  out.params = {{"amplitude", 0.25}, {"rate", 0.01}};
  out.p.reserve(slots);
  for (int64_t t = 1; t <= slots; ++t) {
    out.p.push_back(0.25 / (1.0 + std::exp(-0.01 * t)));
  }
  return out;
}

absl::StatusOr<std::vector<StreamBatch>> RealizeBinaryStream(
    const ProbabilitySequence& p, int64_t num_users, uint64_t seed) {
  if (num_users < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("need at least one user, got ", num_users));
  }
  Rng rng(DeriveSeed(seed, {0x62696e}));
  std::vector<StreamBatch> stream;
  stream.reserve(p.p.size());
  for (size_t k = 0; k < p.p.size(); ++k) {
    std::vector<int32_t> buckets(num_users);
    for (int64_t i = 0; i < num_users; ++i) {
      buckets[i] = rng.Bernoulli(p.p[k]) ? 1 : 0;
    }
    stream.emplace_back(static_cast<int64_t>(k + 1), 2, std::move(buckets));
  }
  return stream;
}

}  // namespace pwevent
