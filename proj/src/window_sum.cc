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

#include "dpdecay/window_sum.h"

#include <bit>
#include <string>
#include <utility>

#include "dpdecay/errors.h"
#include "dpdecay/sensitivity.h"

namespace dpdecay {
namespace {

void CheckUpdate(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw RangeError("update " + std::to_string(x) + " outside [0, 1]");
  }
}

}  // namespace

WindowSum::WindowSum(int64_t window, double epsilon, RandomSource rng,
                     MechanismOptions options)
    : WindowSum(window, window,
                LaplaceScale(
                    [&] {
                      if (window < 1 || !std::has_single_bit(
                                            static_cast<uint64_t>(window))) {
                        throw ParameterError(
                            "WindowSum needs a power-of-two window (got " +
                            std::to_string(window) +
                            "); use AllWindowSum for arbitrary W");
                      }
                      if (!(epsilon > 0.0)) {
                        throw ParameterError("epsilon must be positive");
                      }
                      return WindowSensitivity(window) / epsilon;
                    }()),
                rng, options) {}

WindowSum WindowSum::WithBlockAlignment(int64_t window, LaplaceScale scale,
                                        RandomSource rng,
                                        MechanismOptions options) {
  if (window < 1) throw ParameterError("window must be >= 1");
  const auto block = static_cast<int64_t>(
      std::bit_ceil(static_cast<uint64_t>(window)));
  return WindowSum(window, block, scale, rng, options);
}

WindowSum::WindowSum(int64_t window, int64_t block, LaplaceScale scale,
                     RandomSource rng, MechanismOptions options)
    : window_(window),
      block_(block),
      scale_(scale),
      noise_(CounterNoise::Uniform(rng, scale, options.noise)),
      options_(options) {}

double WindowSum::Prefix(DyadicTree& tree, int64_t block_index, int64_t u) {
  double sum = 0.0;
  ForEachPrefixNode(tree.lo(), u, [&](const Interval& iv) {
    sum += tree.Touch(iv, noise_).value();
    if (options_.trace_reads) last_reads_.push_back({block_index, iv});
  });
  return sum;
}

double WindowSum::Push(double x) {
  CheckUpdate(x);
  const int64_t i = ++step_;
  const int64_t k = (i - 1) / block_ + 1;
  if (k != block_index_) {
    if (previous_ && options_.retain_counters) {
      retired_.push_back(std::move(*previous_));
    }
    previous_ = std::move(current_);
    current_.emplace((k - 1) * block_ + 1, k * block_);
    block_index_ = k;
  }

  current_->ForEachAncestor(i, [&](const Interval& iv) {
    current_->Touch(iv, noise_).c0 += x;
  });

  last_reads_.clear();
  const int64_t block_start = (k - 1) * block_;  // last step of block k-1
  const int64_t lagged = i - window_;
  if (lagged >= block_start) {
    // Window lies inside the current block (only when W < B).
    return Prefix(*current_, k, i) - Prefix(*current_, k, lagged);
  }
  if (k == 1) {
    // Steps before 1 are zero; no block 0.
    return Prefix(*current_, k, i);
  }
  const double suffix =
      Prefix(*previous_, k - 1, block_start) -
      Prefix(*previous_, k - 1, lagged);
  return suffix + Prefix(*current_, k, i);
}

void WindowSum::VisitCounters(const CounterVisitor& visit) const {
  auto visit_tree = [&](const DyadicTree& tree) {
    const int64_t instance = (tree.lo() - 1) / block_ + 1;
    tree.ForEachNode([&](const Interval& iv, const TreeNode& node) {
      visit(CounterId{instance, iv}, node);
    });
  };
  for (const DyadicTree& tree : retired_) visit_tree(tree);
  if (previous_) visit_tree(*previous_);
  if (current_) visit_tree(*current_);
}

size_t WindowSum::live_counters() const {
  size_t n = 0;
  for (const DyadicTree& tree : retired_) n += tree.live_nodes();
  if (previous_) n += previous_->live_nodes();
  if (current_) n += current_->live_nodes();
  return n;
}

}  // namespace dpdecay
