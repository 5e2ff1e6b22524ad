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

#ifndef DPDECAY_DYADIC_TREE_H_
#define DPDECAY_DYADIC_TREE_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "dpdecay/random.h"

namespace dpdecay {

// Inclusive range [l, u] of 1-based time indices.
struct Interval {
  int64_t l = 1;
  int64_t u = 0;

  int64_t length() const { return u - l + 1; }
  bool contains(int64_t i) const { return l <= i && i <= u; }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend auto operator<=>(const Interval&, const Interval&) = default;

  std::string ToString() const;
};

// Level of a dyadic interval (leaves are level 1).
inline int LevelOf(const Interval& iv) {
  return std::bit_width(static_cast<uint64_t>(iv.length()));
}

// Counter at one tree node. The published value is always c0 + z; z is
// drawn once when the node is materialized and never changes.
struct TreeNode {
  double c0 = 0.0;
  double z = 0.0;
  double value() const { return c0 + z; }
};

// Calls fn(interval) for each node of the prefix decomposition of [lo, u]
// inside an aligned power-of-two block starting at lo: the binary digits of
// u - lo + 1 from the most significant one down. u == lo - 1 yields nothing.
template <typename Fn>
void ForEachPrefixNode(int64_t lo, int64_t u, Fn&& fn) {
  uint64_t remaining = static_cast<uint64_t>(u - lo + 1);
  int64_t start = lo;
  while (remaining != 0) {
    const int64_t size = static_cast<int64_t>(std::bit_floor(remaining));
    fn(Interval{start, start + size - 1});
    start += size;
    remaining -= static_cast<uint64_t>(size);
  }
}

// Complete binary tree T(lo, hi) over a power-of-two span of time steps.
// Node storage is keyed by (level, index); nodes materialize lazily on first
// touch, drawing their noise from the CounterNoise handed in by the caller.
// The tree itself is policy-free: which nodes receive updates is up to the
// mechanism.
class DyadicTree {
 public:
  DyadicTree(int64_t lo, int64_t hi);

  int64_t lo() const { return lo_; }
  int64_t hi() const { return hi_; }
  int height() const { return static_cast<int>(levels_.size()); }
  Interval root() const { return Interval{lo_, hi_}; }

  // Nodes covering [lo, u], largest first. Empty for u == lo - 1.
  // Throws RangeError outside [lo - 1, hi].
  std::vector<Interval> DecomposePrefix(int64_t u) const;

  // The `height()` ancestors of leaf i, leaf first. Throws RangeError.
  std::vector<Interval> PathIntervals(int64_t i) const;

  // fn(interval) for each ancestor of leaf i (no range check), leaf first.
  template <typename Fn>
  void ForEachAncestor(int64_t i, Fn&& fn) const {
    for (int k = 1; k <= height(); ++k) {
      fn(IntervalAt(k, (i - lo_) >> (k - 1)));
    }
  }

  bool IsNode(const Interval& iv) const;

  // True iff iv precedes its sibling. The root has no sibling: false.
  // Throws ParameterError if iv is not a node of this tree.
  bool IsLeftNode(const Interval& iv) const;

  // Materializes the node if needed (drawing z from `noise`).
  TreeNode& Touch(const Interval& iv, CounterNoise& noise);

  // nullptr if the node was never materialized or has been evicted.
  const TreeNode* Find(const Interval& iv) const;

  // c0 of the node, 0 if never materialized.
  double NoiselessValue(const Interval& iv) const;

  // Doubles the tree from [1, step - 1] to [1, 2(step - 1)]. The new root is
  // created with fresh noise and c0 = carry_weight * c0(old root).
  // Throws StateError unless lo == 1 and hi == incoming_step - 1.
  void GrowDouble(int64_t incoming_step, double carry_weight,
                  CounterNoise& noise);

  // Drops every node whose parent interval ends at or before `step`; such
  // nodes can no longer appear in a prefix decomposition for steps >= step
  // nor receive updates. Leaves at most one live node per level when only
  // left nodes and the spine are materialized.
  void EvictUnreachable(int64_t step);

  size_t live_nodes() const;
  size_t live_nodes_at(int level) const;

  // fn(const Interval&, const TreeNode&) for every live node.
  template <typename Fn>
  void ForEachNode(Fn&& fn) const {
    for (int k = 1; k <= height(); ++k) {
      const Level& level = levels_[k - 1];
      for (size_t s = 0; s < level.slots.size(); ++s) {
        if (!level.slots[s].live) continue;
        fn(IntervalAt(k, level.base + static_cast<int64_t>(s)),
           level.slots[s].node);
      }
    }
  }

 private:
  struct Slot {
    TreeNode node;
    bool live = false;
  };
  struct Level {
    int64_t base = 0;   // index of slots.front()
    int64_t floor = 0;  // indices below this were evicted
    std::deque<Slot> slots;
  };

  Interval IntervalAt(int level, int64_t index) const;
  int64_t IndexOf(const Interval& iv) const;
  void CheckNode(const Interval& iv) const;

  int64_t lo_;
  int64_t hi_;
  std::vector<Level> levels_;
};

}  // namespace dpdecay

#endif  // DPDECAY_DYADIC_TREE_H_
