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

#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "pwevent/noise/laplace.h"
#include "pwevent/noise/rng.h"

namespace pwevent {
namespace {

TEST(RngTest, SameSeedSameSequence) {
  Rng a(RngSeed{42, 7}), b(RngSeed{42, 7}), c(RngSeed{42, 8});
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.Laplace(1.0);
    EXPECT_EQ(x, b.Laplace(1.0));
    differs |= x != c.Laplace(1.0);
  }
  EXPECT_TRUE(differs);
}

TEST(RngTest, UniformRange) {
  Rng rng(RngSeed{1, 0});
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.Uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(RngTest, DeriveSeedSeparatesKeys) {
  EXPECT_EQ(DeriveSeed(1, {2, 3}).stream_id, DeriveSeed(1, {2, 3}).stream_id);
  EXPECT_NE(DeriveSeed(1, {2, 3}).stream_id, DeriveSeed(1, {3, 2}).stream_id);
  EXPECT_NE(DeriveSeed(1, {2}).stream_id, DeriveSeed(2, {2}).stream_id);
}

TEST(RngTest, ZeroNoiseMode) {
  Rng rng(RngSeed{1, 0});
  rng.set_zero_noise(true);
  EXPECT_EQ(rng.Laplace(3.0), 0.0);
}

TEST(LaplaceTest, InverseCdf) {
  EXPECT_EQ(LaplaceFromUniform(0.0, 1.0), 0.0);
  // F^{-1}(0.75) = b ln 2.
  EXPECT_NEAR(LaplaceFromUniform(0.25, 2.0), 2.0 * std::log(2.0), 1e-12);
  EXPECT_NEAR(LaplaceFromUniform(-0.25, 2.0), -2.0 * std::log(2.0), 1e-12);
}

TEST(LaplaceTest, RejectsNonPositiveScale) {
  Rng rng(RngSeed{1, 0});
  EXPECT_FALSE(SampleLaplace(0.0, rng).ok());
  EXPECT_FALSE(SampleLaplace(-1.0, rng).ok());
  EXPECT_TRUE(SampleLaplace(1.0, rng).ok());
}

TEST(LaplaceTest, VarianceAndMeanAbsolute) {
  Rng rng(RngSeed{2024, 1});
  const int n = 1000000;
  double sum = 0.0, sq = 0.0, abs_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.Laplace(1.0);
    sum += x;
    sq += x * x;
    abs_sum += std::fabs(x);
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_NEAR(var, 2.0, 0.04);
  EXPECT_NEAR(abs_sum / n, 1.0, 0.02);
}

TEST(NoiseErrorTest, ClosedForm) {
  EXPECT_DOUBLE_EQ(*NoiseError(0.1), 200.0);
  EXPECT_DOUBLE_EQ(*NoiseError(1.0), 2.0);
  EXPECT_DOUBLE_EQ(*NoiseError(0.4), 12.5);
  EXPECT_FALSE(NoiseError(0.0).ok());
  EXPECT_FALSE(NoiseError(-0.5).ok());
}

TEST(NoiseErrorTest, StrictlyDecreasing) {
  double prev = *NoiseError(0.01);
  for (double e = 0.02; e < 5.0; e += 0.01) {
    const double cur = *NoiseError(e);
    EXPECT_LT(cur, prev);
    prev = cur;
  }
}

}  // namespace
}  // namespace pwevent
