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

#include <algorithm>
#include <random>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "pwevent/core/budget_ledger.h"
#include "pwevent/core/budget_pairs.h"
#include "pwevent/core/types.h"

namespace pwevent {
namespace {

using ::testing::ElementsAre;

TEST(CountVectorTest, TotalAndEquality) {
  CountVector a(std::vector<double>{1.0, 2.5, 0.5});
  EXPECT_EQ(a.dimension(), 3u);
  EXPECT_DOUBLE_EQ(a.Total(), 4.0);
  EXPECT_EQ(a, CountVector(std::vector<double>{1.0, 2.5, 0.5}));
  EXPECT_FALSE(a == CountVector(3));
}

TEST(StreamBatchTest, HistogramSkipsAbsentUsers) {
  StreamBatch b(1, 3, {0, 2, StreamBatch::kAbsent, 2});
  ASSERT_TRUE(b.Validate().ok());
  EXPECT_THAT(b.Histogram().values(), ElementsAre(1.0, 0.0, 2.0));
  EXPECT_FALSE(b.bucket(2).has_value());
  EXPECT_EQ(*b.bucket(3), 2);
}

TEST(StreamBatchTest, ValidateRejectsOutOfRangeBucket) {
  EXPECT_FALSE(StreamBatch(1, 2, {0, 2}).Validate().ok());
  EXPECT_FALSE(StreamBatch(1, 2, {-3}).Validate().ok());
  EXPECT_FALSE(StreamBatch(0, 2, {0}).Validate().ok());
}

TEST(RequirementTest, Validate) {
  EXPECT_TRUE((FixedRequirement{4, 1.0}).Validate().ok());
  EXPECT_FALSE((FixedRequirement{0, 1.0}).Validate().ok());
  EXPECT_FALSE((FixedRequirement{4, 0.0}).Validate().ok());
  EXPECT_DOUBLE_EQ((FixedRequirement{4, 1.0}).Share(), 0.125);
  EXPECT_TRUE((DynamicRequirement{1, 1.0, 4, 2.4}).Validate().ok());
  EXPECT_FALSE((DynamicRequirement{1, 1.0, 0, 2.4}).Validate().ok());
  EXPECT_FALSE((DynamicRequirement{1, -1.0, 4, 2.4}).Validate().ok());
}

TEST(BudgetLedgerTest, WindowSumOfPublicationPhase) {
  BudgetLedger ledger(1);
  for (double e : {0.5, 0.0, 0.2}) {
    ASSERT_TRUE(
        ledger.Append(std::vector<double>{0.1}, std::vector<double>{e}).ok());
  }
  EXPECT_NEAR(*ledger.WindowSum(0, Phase::kPublication, 1, 3), 0.7, 1e-12);
  EXPECT_NEAR(*ledger.WindowSum(0, Phase::kCalculation, 1, 3), 0.3, 1e-12);
  EXPECT_NEAR(*ledger.WindowSum(0, Phase::kTotal, 2, 3), 0.4, 1e-12);
  EXPECT_EQ(*ledger.WindowSum(0, Phase::kPublication, 2, 2), 0.0);
}

TEST(BudgetLedgerTest, WindowSumRangeErrors) {
  BudgetLedger ledger(1);
  ASSERT_TRUE(
      ledger.Append(std::vector<double>{0.1}, std::vector<double>{0.1}).ok());
  EXPECT_FALSE(ledger.WindowSum(0, Phase::kTotal, 0, 1).ok());
  EXPECT_FALSE(ledger.WindowSum(0, Phase::kTotal, 1, 2).ok());
  EXPECT_FALSE(ledger.WindowSum(0, Phase::kTotal, 2, 1).ok());
  EXPECT_EQ(ledger.ClampedSum(0, Phase::kTotal, -5, 0), 0.0);
  EXPECT_NEAR(ledger.ClampedSum(0, Phase::kTotal, -5, 9), 0.2, 1e-12);
}

TEST(BudgetLedgerTest, AppendRejectsBadEntries) {
  BudgetLedger ledger(2);
  EXPECT_FALSE(
      ledger.Append(std::vector<double>{0.1}, std::vector<double>{0.1, 0.1})
          .ok());
  EXPECT_FALSE(
      ledger
          .Append(std::vector<double>{0.1, -0.1}, std::vector<double>{0.1, 0.1})
          .ok());
  EXPECT_FALSE(ledger
                   .Append(std::vector<double>{0.1, 0.1},
                           std::vector<double>{0.1, 1.0 / 0.0})
                   .ok());
  EXPECT_EQ(ledger.current_slot(), 0);
}

TEST(BudgetLedgerTest, PrefixSumsMatchNaiveLoop) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  BudgetLedger ledger(1);
  std::vector<double> e1, e2;
  for (int t = 0; t < 10000; ++t) {
    e1.push_back(u(gen) * 1e-2);
    e2.push_back(u(gen) < 0.3 ? u(gen) : 0.0);
    ASSERT_TRUE(ledger
                    .Append(std::vector<double>{e1.back()},
                            std::vector<double>{e2.back()})
                    .ok());
  }
  std::uniform_int_distribution<int> slot(1, 10000);
  for (int q = 0; q < 500; ++q) {
    int a = slot(gen), b = slot(gen);
    if (a > b) std::swap(a, b);
    double naive1 = 0.0, naive2 = 0.0;
    for (int k = a; k <= b; ++k) {
      naive1 += e1[k - 1];
      naive2 += e2[k - 1];
    }
    EXPECT_NEAR(*ledger.WindowSum(0, Phase::kCalculation, a, b), naive1, 1e-9);
    EXPECT_NEAR(*ledger.WindowSum(0, Phase::kPublication, a, b), naive2, 1e-9);
    EXPECT_NEAR(*ledger.WindowSum(0, Phase::kTotal, a, b), naive1 + naive2,
                1e-9);
  }
}

TEST(CollapseBudgetsTest, RunningExample) {
  const std::vector<double> eps = {0.1, 0.4, 0.4, 0.1, 0.4,
                                   0.4, 0.8, 0.8, 0.8, 0.4};
  BudgetQuantityPairs p = CollapseBudgets(eps);
  EXPECT_THAT(p.pairs, ElementsAre(BudgetPair{0.1, 2}, BudgetPair{0.4, 5},
                                   BudgetPair{0.8, 3}));
  EXPECT_EQ(p.excluded_count, 0);
  EXPECT_EQ(p.total(), 10);
}

TEST(CollapseBudgetsTest, AllEqualAndZeros) {
  EXPECT_THAT(CollapseBudgets(std::vector<double>(5, 1.0)).pairs,
              ElementsAre(BudgetPair{1.0, 5}));
  BudgetQuantityPairs p = CollapseBudgets(std::vector<double>{0.0, 0.5});
  EXPECT_THAT(p.pairs, ElementsAre(BudgetPair{0.5, 1}));
  EXPECT_EQ(p.excluded_count, 1);
  EXPECT_TRUE(CollapseBudgets(std::vector<double>{0.0, 0.0}).empty());
}

TEST(CollapseBudgetsTest, OrderInsensitiveAndConserving) {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> level(0, 5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> eps(30);
    for (double& e : eps) e = 0.2 * level(gen);
    BudgetQuantityPairs a = CollapseBudgets(eps);
    std::shuffle(eps.begin(), eps.end(), gen);
    BudgetQuantityPairs b = CollapseBudgets(eps);
    EXPECT_EQ(a.pairs, b.pairs);
    EXPECT_EQ(a.total() + a.excluded_count, 30);
    for (size_t j = 1; j < a.pairs.size(); ++j) {
      EXPECT_LT(a.pairs[j - 1].eps, a.pairs[j].eps);
    }
  }
}

TEST(DecisionTest, Names) {
  EXPECT_EQ(DecisionName(Decision::kNonNull), "non_null");
  EXPECT_EQ(DecisionName(Decision::kSkipped), "skipped");
  EXPECT_EQ(DecisionName(Decision::kNullified), "nullified");
  EXPECT_EQ(DecisionName(Decision::kForced), "forced");
}

}  // namespace
}  // namespace pwevent
