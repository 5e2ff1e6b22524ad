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

#include <bit>
#include <string>

#include "dpdecay/errors.h"

namespace dpdecay {

std::string Interval::ToString() const {
  return "[" + std::to_string(l) + "," + std::to_string(u) + "]";
}

DyadicTree::DyadicTree(int64_t lo, int64_t hi) : lo_(lo), hi_(hi) {
  if (lo < 1 || hi < lo) {
    throw ParameterError("tree span must satisfy 1 <= lo <= hi");
  }
  const auto span = static_cast<uint64_t>(hi - lo + 1);
  if (!std::has_single_bit(span)) {
    throw ParameterError("tree span must be a power of two, got " +
                         std::to_string(span));
  }
  levels_.resize(std::bit_width(span));
}

Interval DyadicTree::IntervalAt(int level, int64_t index) const {
  const int64_t size = int64_t{1} << (level - 1);
  const int64_t l = lo_ + index * size;
  return Interval{l, l + size - 1};
}

int64_t DyadicTree::IndexOf(const Interval& iv) const {
  return (iv.l - lo_) >> (LevelOf(iv) - 1);
}

bool DyadicTree::IsNode(const Interval& iv) const {
  if (iv.l < lo_ || iv.u > hi_ || iv.u < iv.l) return false;
  const auto len = static_cast<uint64_t>(iv.length());
  if (!std::has_single_bit(len)) return false;
  return (static_cast<uint64_t>(iv.l - lo_) % len) == 0;
}

void DyadicTree::CheckNode(const Interval& iv) const {
  if (!IsNode(iv)) {
    throw ParameterError(iv.ToString() + " is not a node of tree " +
                         root().ToString());
  }
}

std::vector<Interval> DyadicTree::DecomposePrefix(int64_t u) const {
  if (u < lo_ - 1 || u > hi_) {
    throw RangeError("prefix end " + std::to_string(u) + " outside " +
                     root().ToString());
  }
  std::vector<Interval> out;
  ForEachPrefixNode(lo_, u, [&](const Interval& iv) { out.push_back(iv); });
  return out;
}

std::vector<Interval> DyadicTree::PathIntervals(int64_t i) const {
  if (i < lo_ || i > hi_) {
    throw RangeError("leaf " + std::to_string(i) + " outside " +
                     root().ToString());
  }
  std::vector<Interval> out;
  out.reserve(levels_.size());
  for (int k = 1; k <= height(); ++k) {
    out.push_back(IntervalAt(k, (i - lo_) >> (k - 1)));
  }
  return out;
}

bool DyadicTree::IsLeftNode(const Interval& iv) const {
  CheckNode(iv);
  if (iv == root()) return false;
  return (IndexOf(iv) & 1) == 0;
}

TreeNode& DyadicTree::Touch(const Interval& iv, CounterNoise& noise) {
  CheckNode(iv);
  const int k = LevelOf(iv);
  Level& level = levels_[k - 1];
  const int64_t index = IndexOf(iv);
  if (index < level.floor) {
    throw StateError("node " + iv.ToString() + " was evicted");
  }
  if (level.slots.empty()) {
    level.base = index;
  } else if (index < level.base) {
    level.slots.insert(level.slots.begin(),
                       static_cast<size_t>(level.base - index), Slot{});
    level.base = index;
  }
  const auto offset = static_cast<size_t>(index - level.base);
  if (offset >= level.slots.size()) level.slots.resize(offset + 1);
  Slot& slot = level.slots[offset];
  if (!slot.live) {
    slot.live = true;
    slot.node.c0 = 0.0;
    slot.node.z = noise.Draw(k);
  }
  return slot.node;
}

const TreeNode* DyadicTree::Find(const Interval& iv) const {
  if (!IsNode(iv)) return nullptr;
  const Level& level = levels_[LevelOf(iv) - 1];
  const int64_t index = IndexOf(iv);
  if (index < level.base) return nullptr;
  const auto offset = static_cast<size_t>(index - level.base);
  if (offset >= level.slots.size() || !level.slots[offset].live) {
    return nullptr;
  }
  return &level.slots[offset].node;
}

double DyadicTree::NoiselessValue(const Interval& iv) const {
  const TreeNode* node = Find(iv);
  return node == nullptr ? 0.0 : node->c0;
}

void DyadicTree::GrowDouble(int64_t incoming_step, double carry_weight,
                            CounterNoise& noise) {
  if (lo_ != 1 || hi_ != incoming_step - 1) {
    throw StateError("tree " + root().ToString() +
                     " cannot grow for incoming step " +
                     std::to_string(incoming_step));
  }
  if (!(carry_weight >= 0.0)) {
    throw ParameterError("carry weight must be non-negative");
  }
  const double carried = NoiselessValue(root());
  hi_ = 2 * hi_;
  levels_.emplace_back();
  TreeNode& new_root = Touch(root(), noise);
  new_root.c0 = carry_weight * carried;
}

void DyadicTree::EvictUnreachable(int64_t step) {
  // The root (last level) has no parent and is always kept.
  for (int k = 1; k < height(); ++k) {
    Level& level = levels_[k - 1];
    const int64_t parent_size = int64_t{1} << k;
    while (!level.slots.empty()) {
      const int64_t parent_u = lo_ + (level.base / 2 + 1) * parent_size - 1;
      if (parent_u > step) break;
      level.slots.pop_front();
      ++level.base;
      level.floor = level.base;
    }
  }
}

size_t DyadicTree::live_nodes_at(int level) const {
  if (level < 1 || level > height()) return 0;
  size_t n = 0;
  for (const Slot& s : levels_[level - 1].slots) n += s.live ? 1 : 0;
  return n;
}

size_t DyadicTree::live_nodes() const {
  size_t n = 0;
  for (int k = 1; k <= height(); ++k) n += live_nodes_at(k);
  return n;
}

}  // namespace dpdecay
