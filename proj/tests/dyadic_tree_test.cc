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

#include "dpdecay/dyadic_tree.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <vector>

#include "dpdecay/errors.h"
#include "gtest/gtest.h"

namespace dpdecay {
namespace {

using Intervals = std::vector<Interval>;

CounterNoise Silent() {
  return CounterNoise::Uniform(RandomSource(0), LaplaceScale(1.0),
                               NoiseMode::kDisabled);
}

TEST(DecomposePrefixTest, SplitsIntoTwoNodes) {
  const int64_t L = 9;
  DyadicTree tree(L, L + 7);
  EXPECT_EQ(tree.DecomposePrefix(L + 5),
            (Intervals{{L, L + 3}, {L + 4, L + 5}}));
}

TEST(DecomposePrefixTest, WholeRangeIsRoot) {
  DyadicTree tree(1, 8);
  EXPECT_EQ(tree.DecomposePrefix(8), (Intervals{{1, 8}}));
}

TEST(DecomposePrefixTest, PrefixOfSecondBlock) {
  DyadicTree tree(5, 8);
  EXPECT_EQ(tree.DecomposePrefix(7), (Intervals{{5, 6}, {7, 7}}));
}

TEST(DecomposePrefixTest, EmptyPrefixAndRangeErrors) {
  DyadicTree tree(5, 8);
  EXPECT_TRUE(tree.DecomposePrefix(4).empty());
  EXPECT_THROW(tree.DecomposePrefix(3), RangeError);
  EXPECT_THROW(tree.DecomposePrefix(9), RangeError);
}

TEST(DecomposePrefixTest, ExhaustiveTilingUpToTenLevels) {
  for (int h = 0; h <= 10; ++h) {
    const int64_t size = int64_t{1} << h;
    for (int64_t lo : {int64_t{1}, size + 1}) {
      DyadicTree tree(lo, lo + size - 1);
      for (int64_t u = lo; u <= tree.hi(); ++u) {
        const Intervals parts = tree.DecomposePrefix(u);
        const int64_t n = u - lo + 1;
        const int64_t bound = std::max<int64_t>(
            1, std::bit_width(static_cast<uint64_t>(n - 1)));
        ASSERT_LE(static_cast<int64_t>(parts.size()), bound);
        int64_t next = lo;
        std::vector<int64_t> lengths;
        for (size_t k = 0; k < parts.size(); ++k) {
          ASSERT_EQ(parts[k].l, next);
          ASSERT_TRUE(tree.IsNode(parts[k]));
          ASSERT_TRUE(std::has_single_bit(
              static_cast<uint64_t>(parts[k].length())));
          if (k > 0) {
            ASSERT_TRUE(tree.IsLeftNode(parts[k]));
          }
          lengths.push_back(parts[k].length());
          next = parts[k].u + 1;
        }
        ASSERT_EQ(next, u + 1);
        std::sort(lengths.begin(), lengths.end());
        ASSERT_EQ(std::adjacent_find(lengths.begin(), lengths.end()),
                  lengths.end());
      }
    }
  }
}

TEST(PathIntervalsTest, Examples) {
  DyadicTree small(1, 4);
  EXPECT_EQ(small.PathIntervals(3), (Intervals{{3, 3}, {3, 4}, {1, 4}}));
  DyadicTree tree(1, 8);
  const Intervals path = tree.PathIntervals(1);
  ASSERT_EQ(path.size(), 4u);
  for (const auto& iv : path) EXPECT_EQ(iv.l, 1);
  EXPECT_THROW(tree.PathIntervals(9), RangeError);
  for (int64_t i = 1; i <= 8; ++i) {
    EXPECT_EQ(static_cast<int>(tree.PathIntervals(i).size()), tree.height());
  }
}

TEST(IsLeftNodeTest, Examples) {
  DyadicTree tree(1, 8);
  EXPECT_TRUE(tree.IsLeftNode({1, 2}));
  EXPECT_FALSE(tree.IsLeftNode({7, 8}));
  EXPECT_FALSE(tree.IsLeftNode({1, 8}));
  EXPECT_THROW(tree.IsLeftNode({2, 3}), ParameterError);
  EXPECT_THROW(tree.IsLeftNode({1, 3}), ParameterError);
}

TEST(LeftAncestorGapTest, ExhaustiveUpToTenLevels) {
  for (int h = 0; h <= 10; ++h) {
    DyadicTree tree(1, int64_t{1} << h);
    for (int64_t i = 1; i <= tree.hi(); ++i) {
      Intervals left;
      for (const auto& iv : tree.PathIntervals(i)) {
        if (tree.IsLeftNode(iv)) left.push_back(iv);
      }
      // PathIntervals is leaf first, so `left` is sorted by size.
      for (size_t k = 0; k < left.size(); ++k) {
        ASSERT_GE(left[k].u - i, (int64_t{1} << k) - 1)
            << "h=" << h << " i=" << i;
      }
    }
  }
}

TEST(TouchTest, NoiseIsFixedAtCreation) {
  auto noise = CounterNoise::Uniform(RandomSource(3), LaplaceScale(2.0));
  DyadicTree tree(1, 64);
  std::map<Interval, double> first_z;
  RandomSource data(9);
  for (int step = 0; step < 10'000; ++step) {
    const int64_t i = 1 + static_cast<int64_t>(data.NextU64() % 64);
    const double x = data.UniformOpen();
    tree.ForEachAncestor(i, [&](const Interval& iv) {
      TreeNode& node = tree.Touch(iv, noise);
      node.c0 += x;
      first_z.try_emplace(iv, node.z);
    });
  }
  tree.ForEachNode([&](const Interval& iv, const TreeNode& node) {
    ASSERT_EQ(node.z, first_z.at(iv));
    ASSERT_EQ(node.value(), node.c0 + node.z);
  });
}

TEST(GrowDoubleTest, UnitCarryCopiesPrefix) {
  auto noise = Silent();
  DyadicTree tree(1, 4);
  tree.Touch({1, 4}, noise).c0 = 3.0;
  tree.GrowDouble(5, 1.0, noise);
  EXPECT_EQ(tree.root(), (Interval{1, 8}));
  EXPECT_EQ(tree.NoiselessValue({1, 8}), 3.0);
  EXPECT_EQ(tree.NoiselessValue({1, 4}), 3.0);
}

TEST(GrowDoubleTest, DecayedCarry) {
  auto noise = Silent();
  DyadicTree tree(1, 4);
  tree.Touch({1, 4}, noise).c0 = 2.0;
  tree.GrowDouble(5, std::pow(0.5, 4), noise);
  EXPECT_DOUBLE_EQ(tree.NoiselessValue({1, 8}), 0.125);
}

TEST(GrowDoubleTest, DoublingSequence) {
  auto noise = Silent();
  DyadicTree tree(1, 1);
  std::vector<int64_t> his;
  for (int64_t i = 1; i <= 9; ++i) {
    if (i > tree.hi()) {
      tree.GrowDouble(i, 1.0, noise);
      his.push_back(tree.hi());
    }
  }
  EXPECT_EQ(his, (std::vector<int64_t>{2, 4, 8, 16}));
}

TEST(GrowDoubleTest, RejectsWrongStep) {
  auto noise = Silent();
  DyadicTree tree(1, 4);
  EXPECT_THROW(tree.GrowDouble(4, 1.0, noise), StateError);
  DyadicTree shifted(5, 8);
  EXPECT_THROW(shifted.GrowDouble(9, 1.0, noise), StateError);
}

TEST(EvictUnreachableTest, DropsFinishedSubtrees) {
  auto noise = Silent();
  DyadicTree tree(1, 8);
  for (int64_t i = 1; i <= 8; ++i) {
    tree.ForEachAncestor(i, [&](const Interval& iv) { tree.Touch(iv, noise); });
  }
  tree.EvictUnreachable(4);
  EXPECT_EQ(tree.Find({1, 1}), nullptr);
  EXPECT_EQ(tree.Find({1, 2}), nullptr);
  EXPECT_NE(tree.Find({5, 6}), nullptr);
  EXPECT_NE(tree.Find({1, 4}), nullptr);
  EXPECT_THROW(tree.Touch({1, 2}, noise), StateError);
}

TEST(ConstructionTest, RejectsBadRanges) {
  EXPECT_THROW(DyadicTree(0, 3), ParameterError);
  EXPECT_THROW(DyadicTree(1, 3), ParameterError);
  EXPECT_THROW(DyadicTree(4, 3), ParameterError);
}

}  // namespace
}  // namespace dpdecay
