//
// Copyright 2026 The dpdecay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "dpdecay/random.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "dpdecay/errors.h"
#include "gtest/gtest.h"

namespace dpdecay {
namespace {

TEST(LaplaceTest, MidpointUniformGivesZero) {
  EXPECT_EQ(LaplaceFromUniform(0.0, LaplaceScale(3.0)), 0.0);
}

TEST(LaplaceTest, InverseCdfIsAntisymmetric) {
  const LaplaceScale b(2.0);
  for (double u : {0.1, 0.25, 0.4999}) {
    EXPECT_DOUBLE_EQ(LaplaceFromUniform(u, b), -LaplaceFromUniform(-u, b));
    EXPECT_DOUBLE_EQ(LaplaceFromUniform(u, b), -2.0 * std::log1p(-2.0 * u));
  }
}

TEST(LaplaceTest, RejectsNonPositiveScale) {
  EXPECT_THROW(LaplaceScale(0.0), ParameterError);
  EXPECT_THROW(LaplaceScale(-1.0), ParameterError);
  EXPECT_THROW(LaplaceScale(std::nan("")), ParameterError);
}

TEST(LaplaceTest, MomentsMatchScale) {
  for (double b : {1.0, 3.5}) {
    RandomSource rng(42);
    const int n = 1'000'000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double v = LaplaceSample(rng, LaplaceScale(b));
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    EXPECT_LT(std::abs(mean), 5.0 * b * std::sqrt(2.0) / 1e3);
    EXPECT_NEAR(var / (2.0 * b * b), 1.0, 0.02);
  }
}

TEST(RandomSourceTest, SameSeedSameSequence) {
  RandomSource a(7);
  RandomSource b(7);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(LaplaceSample(a, LaplaceScale(1.0)),
              LaplaceSample(b, LaplaceScale(1.0)));
  }
}

TEST(RandomSourceTest, ChildrenDiffer) {
  const RandomSource root(11);
  RandomSource a = root.Child(1);
  RandomSource b = root.Child(2);
  int equal = 0;
  for (int i = 0; i < 10'000; ++i) equal += a.NextU64() == b.NextU64();
  EXPECT_EQ(equal, 0);
}

TEST(RandomSourceTest, ChildIgnoresDrawPosition) {
  RandomSource a(5);
  const RandomSource before = a.Child(3);
  a.NextU64();
  RandomSource b = a.Child(3);
  RandomSource c = before;
  EXPECT_EQ(b.NextU64(), c.NextU64());
}

TEST(RandomSourceTest, UniformsStayInOpenIntervals) {
  RandomSource rng(1);
  for (int i = 0; i < 100'000; ++i) {
    const double u = rng.UniformCentered();
    ASSERT_GT(u, -0.5);
    ASSERT_LT(u, 0.5);
    const double v = rng.UniformOpen();
    ASSERT_GT(v, 0.0);
    ASSERT_LT(v, 1.0);
  }
}

TEST(ZetaTest, ClosedForms) {
  constexpr double kPi = std::numbers::pi;
  EXPECT_DOUBLE_EQ(RiemannZeta(2.0), kPi * kPi / 6.0);
  EXPECT_NEAR(RiemannZetaSeries(2.0), kPi * kPi / 6.0, 1e-12);
  EXPECT_NEAR(RiemannZetaSeries(4.0), std::pow(kPi, 4) / 90.0, 1e-12);
  EXPECT_NEAR(RiemannZeta(4.0), std::pow(kPi, 4) / 90.0, 1e-12);
  EXPECT_THROW(RiemannZeta(1.0), ParameterError);
}

TEST(LevelEpsilonsTest, Examples) {
  constexpr double kPi = std::numbers::pi;
  EXPECT_NEAR(LevelEpsilons(1.0, 2.0, 1)[0], 6.0 / (kPi * kPi), 1e-15);
  EXPECT_NEAR(LevelEpsilons(2.0, 2.0, 2)[1], 0.30396355, 1e-8);
  EXPECT_THROW(LevelEpsilons(1.0, 1.0, 3), ParameterError);
  EXPECT_THROW(LevelEpsilons(1.0, 0.5, 3), ParameterError);
}

TEST(LevelEpsilonsTest, DecreasingWithPartialSumsBelowBudget) {
  for (double beta : {1.5, 2.0, 3.0}) {
    const auto eps = LevelEpsilons(1.0, beta, 200);
    double partial = 0.0;
    for (size_t k = 0; k < eps.size(); ++k) {
      if (k > 0) {
        EXPECT_LT(eps[k], eps[k - 1]);
      }
      const double next = partial + eps[k];
      EXPECT_GT(next, partial);
      partial = next;
    }
    EXPECT_LT(partial, 1.0);
  }
}

TEST(PrivacyBudgetTest, Validation) {
  PrivacyBudget ok{1.0, 0.05, LevelEpsilons(1.0, 2.0, 30)};
  EXPECT_NO_THROW(ok.Validate());
  EXPECT_THROW((PrivacyBudget{0.0, std::nullopt, {}}).Validate(), ParameterError);
  EXPECT_THROW((PrivacyBudget{1.0, 1.5, {}}).Validate(), ParameterError);
  EXPECT_THROW((PrivacyBudget{1.0, std::nullopt, {0.6, 0.6}}).Validate(),
               ParameterError);
}

TEST(CounterNoiseTest, DisabledDrawsZero) {
  auto noise = CounterNoise::Uniform(RandomSource(1), LaplaceScale(2.0),
                                     NoiseMode::kDisabled);
  EXPECT_EQ(noise.Draw(1), 0.0);
  EXPECT_FALSE(noise.enabled());
}

TEST(CounterNoiseTest, PerLevelScales) {
  auto noise = CounterNoise::PerLevel(RandomSource(1), 2.0, 2.0);
  const auto eps = LevelEpsilons(2.0, 2.0, 5);
  for (int k = 1; k <= 5; ++k) {
    EXPECT_NEAR(noise.ScaleAt(k), 1.0 / eps[k - 1], 1e-12);
  }
}

}  // namespace
}  // namespace dpdecay
