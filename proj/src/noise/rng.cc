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

#include "pwevent/noise/rng.h"

#include <cmath>
#include <vector>

#include "pwevent/noise/laplace.h"

namespace pwevent {
namespace {

std::mt19937_64 MakeEngine(RngSeed seed) {
  std::seed_seq seq{static_cast<uint32_t>(seed.seed),
                    static_cast<uint32_t>(seed.seed >> 32),
                    static_cast<uint32_t>(seed.stream_id),
                    static_cast<uint32_t>(seed.stream_id >> 32)};
  return std::mt19937_64(seq);
}

// splitmix64 finalizer.
uint64_t Mix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(RngSeed seed) : engine_(MakeEngine(seed)) {}

double Rng::Uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::Gaussian(double mean, double stddev) {
  // Box-Muller on our own uniforms keeps the stream portable.
  double u1;
  do {
    u1 = Uniform01();
  } while (u1 == 0.0);
  const double u2 = Uniform01();
  return mean +
         stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double Rng::Laplace(double scale) {
  if (zero_noise_) return 0.0;
  double u;
  do {
    u = Uniform01() - 0.5;
  } while (u == -0.5);
  return LaplaceFromUniform(u, scale);
}

RngSeed DeriveSeed(uint64_t base_seed, std::initializer_list<uint64_t> keys) {
  uint64_t h = Mix(base_seed);
  for (uint64_t k : keys) h = Mix(h ^ Mix(k));
  return RngSeed{base_seed, h};
}

}  // namespace pwevent
