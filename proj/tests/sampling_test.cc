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
#include <limits>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "pwevent/core/budget_pairs.h"
#include "pwevent/sampling/sampling_mechanism.h"

namespace pwevent {
namespace {

const std::vector<double> kRunningExample = {0.1, 0.4, 0.4, 0.1, 0.4,
                                             0.4, 0.8, 0.8, 0.8, 0.4};

// Independent oracle: per-user sums, no pair collapsing.
struct Brute {
  double eps;
  double err;
};
Brute BruteForceObs(const std::vector<double>& eps) {
  Brute best{0.0, std::numeric_limits<double>::infinity()};
  std::vector<double> candidates;
  for (double e : eps) {
    if (e > 0) candidates.push_back(e);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  for (double theta : candidates) {
    double var = 0.0, bias = 0.0;
    for (double e : eps) {
      if (e <= 0 || e >= theta) continue;
      const double p = std::expm1(e) / std::expm1(theta);
      var += p * (1 - p);
      bias += 1 - p;
    }
    const double err = var + bias * bias + 2.0 / (theta * theta);
    if (err < best.err) best = {theta, err};
  }
  return best;
}

TEST(SamplingErrorTest, RunningExample) {
  BudgetQuantityPairs p = CollapseBudgets(kRunningExample);
  EXPECT_NEAR(*SamplingError(p, 0.1), 0.0, 1e-12);
  EXPECT_NEAR(*SamplingError(p, 0.4), 15.31 - 12.5, 0.01);
}

TEST(SamplingErrorTest, SinglePairAtItsBudgetIsZero) {
  BudgetQuantityPairs p = CollapseBudgets(std::vector<double>(7, 0.3));
  EXPECT_EQ(*SamplingError(p, 0.3), 0.0);
  EXPECT_FALSE(SamplingError(p, 0.0).ok());
}

TEST(InclusionProbabilityTest, Values) {
  EXPECT_EQ(InclusionProbability(0.8, 0.8), 1.0);
  EXPECT_EQ(InclusionProbability(0.9, 0.8), 1.0);
  EXPECT_EQ(InclusionProbability(0.0, 0.8), 0.0);
  EXPECT_NEAR(InclusionProbability(0.1, 0.8), 0.0858, 1e-4);
}

TEST(ObsTest, RunningExample) {
  std::optional<ObsResult> r = OptimalBudgetSelection(kRunningExample);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->eps_opt, 0.4);
  EXPECT_NEAR(r->err_min, 15.31, 0.01);
  ASSERT_EQ(r->per_candidate_errors.size(), 3u);
  EXPECT_NEAR(r->per_candidate_errors[0].second, 200.0, 0.01);
  // The total error at the largest budget is Z + 2/0.8^2 by the formula.
  BudgetQuantityPairs p = CollapseBudgets(kRunningExample);
  EXPECT_NEAR(r->per_candidate_errors[2].second,
              *SamplingError(p, 0.8) + 2.0 / 0.64, 1e-12);
}

TEST(ObsTest, HomogeneousRecoversLaplaceError) {
  std::optional<ObsResult> r =
      OptimalBudgetSelection(std::vector<double>(25, 0.5));
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->eps_opt, 0.5);
  EXPECT_DOUBLE_EQ(r->err_min, 8.0);
}

TEST(ObsTest, NoPublishableBudget) {
  EXPECT_FALSE(OptimalBudgetSelection(std::vector<double>{0.0, 0.0}));
  EXPECT_FALSE(OptimalBudgetSelection(std::vector<double>{}));
}

TEST(ObsTest, ZerosAreIgnored) {
  std::vector<double> eps = kRunningExample;
  eps.push_back(0.0);
  eps.push_back(0.0);
  EXPECT_EQ(OptimalBudgetSelection(eps)->eps_opt, 0.4);
}

TEST(ObsTest, MatchesBruteForceOracle) {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> size(1, 50);
  std::uniform_real_distribution<double> budget(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> eps(size(gen));
    for (double& e : eps) e = 1.0 - budget(gen);  // (0, 1]
    const Brute want = BruteForceObs(eps);
    std::optional<ObsResult> got = OptimalBudgetSelection(eps);
    ASSERT_TRUE(got.has_value());
    ASSERT_EQ(got->eps_opt, want.eps) << "trial " << trial;
    EXPECT_NEAR(got->err_min, want.err, 1e-9 * std::max(1.0, want.err));
  }
}

TEST(ObsTest, TieBreaksToSmallestBudget) {
  // Two users at 1.0 and one at 2.0 chosen so that both candidates give the
  // same error is hard to hit exactly; instead check that the chosen error
  // is never beaten by a smaller candidate.
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> level(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> eps(20);
    for (double& e : eps) e = 0.25 * level(gen);
    std::optional<ObsResult> r = OptimalBudgetSelection(eps);
    for (const auto& [theta, err] : r->per_candidate_errors) {
      if (theta < r->eps_opt) EXPECT_GT(err, r->err_min - 1e-9);
      EXPECT_GE(err, r->err_min - 1e-9);
    }
  }
}

TEST(ObsTest, ScaledBudgetsStayInCandidateSet) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> budget(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> eps(15);
    for (double& e : eps) e = budget(gen);
    for (double& e : eps) e *= 3.0;
    const double chosen = OptimalBudgetSelection(eps)->eps_opt;
    EXPECT_NE(std::find(eps.begin(), eps.end(), chosen), eps.end());
  }
}

TEST(SampleHistogramTest, FullInclusion) {
  StreamBatch b(1, 3, {0, 1, 1, 2, StreamBatch::kAbsent});
  Rng rng(RngSeed{1, 2});
  CountVector c = SampleHistogram(b, std::vector<double>(5, 1.0), 0.5, rng);
  EXPECT_EQ(c, b.Histogram());
  CountVector z = SampleHistogram(b, std::vector<double>(5, 0.0), 0.5, rng);
  EXPECT_EQ(z, CountVector(3));
}

TEST(SampleHistogramTest, InclusionRateWithinBinomialBand) {
  const int n = 10000;
  StreamBatch b(1, 1, std::vector<int32_t>(n, 0));
  Rng rng(RngSeed{77, 3});
  const double p = std::expm1(0.1) / std::expm1(0.8);
  const double sigma = std::sqrt(n * p * (1 - p));
  CountVector c = SampleHistogram(b, std::vector<double>(n, 0.1), 0.8, rng);
  EXPECT_NEAR(c[0], n * p, 3 * sigma);
}

TEST(DisturbTest, ZeroNoiseIsIdentity) {
  Rng rng(RngSeed{1, 1});
  rng.set_zero_noise(true);
  CountVector c(std::vector<double>{3.0, 0.0, 7.0});
  EXPECT_EQ(Disturb(c, 0.3, rng), c);
}

TEST(DisturbTest, PerBucketVariance) {
  Rng rng(RngSeed{5, 5});
  CountVector c(std::vector<double>{10.0, 20.0});
  const int reps = 100000;
  double sq0 = 0.0, sq1 = 0.0;
  for (int i = 0; i < reps; ++i) {
    CountVector r = Disturb(c, 1.0, rng);
    sq0 += (r[0] - 10.0) * (r[0] - 10.0);
    sq1 += (r[1] - 20.0) * (r[1] - 20.0);
  }
  EXPECT_NEAR(sq0 / reps, 2.0, 0.06);
  EXPECT_NEAR(sq1 / reps, 2.0, 0.06);
}

TEST(DisturbTest, ReleasedErrorMatchesObsError) {
  // One bucket holding every user: the released error is sampling variance,
  // sampling bias and Laplace variance, which is what OBS minimizes.
  std::vector<double> eps = kRunningExample;
  StreamBatch b(1, 1, std::vector<int32_t>(eps.size(), 0));
  const ObsResult obs = *OptimalBudgetSelection(eps);
  Rng rng(RngSeed{8, 8});
  const int reps = 200000;
  double sq = 0.0, sq2 = 0.0;
  for (int i = 0; i < reps; ++i) {
    CountVector r =
        Disturb(SampleHistogram(b, eps, obs.eps_opt, rng), obs.eps_opt, rng);
    const double e = (r[0] - 10.0) * (r[0] - 10.0);
    sq += e;
    sq2 += e * e;
  }
  const double mean = sq / reps;
  const double se = std::sqrt((sq2 / reps - mean * mean) / reps);
  EXPECT_NEAR(mean, obs.err_min, 1.96 * se + 1e-6);
}

TEST(SamplingErrorUpperBoundTest, Values) {
  BudgetQuantityPairs p = CollapseBudgets(kRunningExample);
  EXPECT_DOUBLE_EQ(*SamplingErrorUpperBound(p, 1.0), 53.875);
  BudgetQuantityPairs u = CollapseBudgets(std::vector<double>(4, 0.5));
  EXPECT_DOUBLE_EQ(*SamplingErrorUpperBound(u, 1.0), 8.0);
  EXPECT_DOUBLE_EQ(*SamplingErrorUpperBound(u, 2.0), 32.0);
  EXPECT_FALSE(SamplingErrorUpperBound(BudgetQuantityPairs{}, 1.0).ok());
}

TEST(SamplingErrorUpperBoundTest, BoundsObsError) {
  std::mt19937_64 gen(21);
  std::uniform_int_distribution<int> size(1, 50);
  std::uniform_real_distribution<double> budget(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> eps(size(gen));
    for (double& e : eps) e = 1.0 - budget(gen);
    const double err = OptimalBudgetSelection(eps)->err_min;
    EXPECT_LE(err, *SamplingErrorUpperBound(CollapseBudgets(eps), 1.0) + 1e-9);
  }
}

TEST(SamplingErrorTest, ZeroAtMinimumBudget) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> budget(0.05, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> eps(10);
    for (double& e : eps) e = budget(gen);
    BudgetQuantityPairs p = CollapseBudgets(eps);
    EXPECT_EQ(*SamplingError(p, p.pairs.front().eps), 0.0);
  }
}

}  // namespace
}  // namespace pwevent
