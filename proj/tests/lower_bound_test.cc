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

#include "dpdecay/lower_bound.h"

#include <cmath>
#include <vector>

#include "dpdecay/errors.h"
#include "gtest/gtest.h"

namespace dpdecay {
namespace {

using Bits = std::vector<uint8_t>;

TEST(FamilyTest, SmallExample) {
  const auto f = BuildLowerBoundFamily(2, 2);
  ASSERT_EQ(f.instances.size(), 3u);
  EXPECT_EQ(f.instances[0], (Bits{0, 0, 0, 0}));
  EXPECT_EQ(f.instances[1], (Bits{1, 1, 0, 0}));
  EXPECT_EQ(f.instances[2], (Bits{0, 0, 1, 1}));
  EXPECT_EQ(f.queries, (std::vector<int64_t>{2, 4}));
}

TEST(FamilyTest, ShapeInvariants) {
  for (int64_t q = 1; q <= 6; ++q) {
    for (int64_t d = 1; d <= 5; ++d) {
      const auto f = BuildLowerBoundFamily(q, d);
      EXPECT_EQ(static_cast<int64_t>(f.queries.size()), q);
      for (size_t a = 0; a < f.instances.size(); ++a) {
        EXPECT_EQ(static_cast<int64_t>(f.instances[a].size()), q * d);
        int64_t weight = 0;
        for (auto b : f.instances[a]) weight += b;
        EXPECT_EQ(weight, a == 0 ? 0 : d);
        EXPECT_EQ(HammingDistance(f.instances[0], f.instances[a]),
                  a == 0 ? 0 : d);
      }
    }
  }
  EXPECT_THROW(BuildLowerBoundFamily(0, 1), ParameterError);
}

TEST(IndependenceTest, WindowPassesAndFails) {
  const auto f = BuildLowerBoundFamily(4, 8);
  const auto pass = CheckIndependence(f, DecaySpec::Window(8), 3.5);
  EXPECT_TRUE(pass.passed);
  EXPECT_EQ(pass.pairs.size(), 10u);
  for (const auto& w : pass.pairs) EXPECT_EQ(w.gap, 8.0);
  const auto fail = CheckIndependence(f, DecaySpec::Window(8), 4.5);
  EXPECT_FALSE(fail.passed);
  EXPECT_FALSE(fail.pairs.front().separated);
  EXPECT_EQ(fail.pairs.front().gap, 8.0);
  EXPECT_FALSE(CheckIndependence(f, DecaySpec::Window(8), 8.0).passed);
}

TEST(IndependenceTest, SingleInstanceNeedsOneWitness) {
  const auto f = BuildLowerBoundFamily(1, 5);
  const auto r = CheckIndependence(f, DecaySpec::Window(5), 2.0);
  ASSERT_EQ(r.pairs.size(), 1u);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.pairs[0].j, 5);
  EXPECT_EQ(r.pairs[0].gap, 5.0);
}

TEST(IndependenceTest, ExhaustiveWindowRegime) {
  for (int64_t q = 1; q <= 8; ++q) {
    for (int64_t d = 1; d <= 16; ++d) {
      const auto f = BuildLowerBoundFamily(q, d);
      for (int64_t w = 1; w <= d; ++w) {
        const double delta = (static_cast<double>(w) - 1.0) / 2.0;
        ASSERT_TRUE(CheckIndependence(f, DecaySpec::Window(w), delta).passed)
            << "q=" << q << " D=" << d << " W=" << w;
        ASSERT_TRUE(CheckCloseness(f, d).passed);
      }
    }
  }
}

TEST(ClosenessTest, ReportsAllPairs) {
  const auto f = BuildLowerBoundFamily(3, 4);
  const auto r = CheckCloseness(f, 4);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.max_to_zero, 4);
  EXPECT_EQ(r.all_pairs_max, 8);
  EXPECT_FALSE(CheckCloseness(f, 3).passed);
  const auto single = BuildLowerBoundFamily(1, 2);
  EXPECT_FALSE(CheckCloseness(single, 0).passed);
}

TEST(FrameworkThresholdTest, Formula) {
  EXPECT_NEAR(FrameworkThreshold(8, 1.0), std::log(16.0), 1e-12);
  EXPECT_NEAR(FrameworkThreshold(1, 0.5), std::log(2.0) / 0.5, 1e-12);
  EXPECT_NEAR(FrameworkThreshold(8, 2.0), FrameworkThreshold(8, 1.0) / 2.0,
              1e-12);
  EXPECT_THROW(FrameworkThreshold(0, 1.0), DomainError);
}

TEST(ReferenceDeltaTest, Curves) {
  // m = floor(ln(1/gamma) / eps)
  EXPECT_EQ(ReferenceDelta(DecaySpec::Window(4), 1e-6, 1.0), 2.0);
  EXPECT_EQ(ReferenceDelta(DecaySpec::Window(100), 1e-6, 1.0), 6.5);
  EXPECT_NEAR(ReferenceDelta(DecaySpec::Exponential(0.9), 1e-300, 0.001),
              5.0, 1e-9);
  // ln(1/gamma) = 3.5 -> m = 3
  EXPECT_NEAR(ReferenceDelta(DecaySpec::Polynomial(2.0, 0.5),
                             std::exp(-3.5), 1.0),
              (1.0 + 0.25 + 1.0 / 9.0) / 2.0, 1e-12);
  EXPECT_EQ(ReferenceDelta(DecaySpec::Window(8), 0.9, 1.0), 0.5);
  EXPECT_THROW(ReferenceDelta(DecaySpec::Window(8), 1.0, 1.0), DomainError);
}

TEST(ReferenceDeltaTest, RunningShapeGrowsWithLogT) {
  const double eps = 0.5;
  double prev = 0.0;
  for (int64_t T = 16; T <= (int64_t{1} << 20); T *= 4) {
    const double gamma = 2.0 / (3.0 * static_cast<double>(T));
    const double v = ReferenceDelta(DecaySpec::Window(T), gamma, eps);
    EXPECT_GT(v, prev);
    EXPECT_NEAR(v, std::floor(std::log(1.0 / gamma) / eps) / 2.0, 1e-12);
    prev = v;
  }
}

}  // namespace
}  // namespace dpdecay
