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

#ifndef PWEVENT_NOISE_RNG_H_
#define PWEVENT_NOISE_RNG_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pwevent {

struct RngSeed {
  uint64_t seed = 0;
  uint64_t stream_id = 0;
};

// Deterministic generator for one trial. Uniforms are built from the raw
// 64-bit output rather than std::uniform_real_distribution so sequences do
// not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(RngSeed seed);

  // Uniform on [0, 1) with 53 random bits.
  double Uniform01();
  bool Bernoulli(double p) { return Uniform01() < p; }
  double Gaussian(double mean, double stddev);
  // One Laplace(0, scale) draw; scale must be positive. Returns 0 without
  // consuming randomness when zero-noise mode is on.
  double Laplace(double scale);

  // Test hook: Laplace draws become exactly 0. Sampling is unaffected.
  void set_zero_noise(bool zero_noise) { zero_noise_ = zero_noise; }
  bool zero_noise() const { return zero_noise_; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  bool zero_noise_ = false;
};

// Mixes a base seed with a list of discriminators into a sub-stream seed.
RngSeed DeriveSeed(uint64_t base_seed, std::initializer_list<uint64_t> keys);

}  // namespace pwevent

#endif  // PWEVENT_NOISE_RNG_H_
