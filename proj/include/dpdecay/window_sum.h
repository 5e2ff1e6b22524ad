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

#ifndef DPDECAY_WINDOW_SUM_H_
#define DPDECAY_WINDOW_SUM_H_

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dpdecay/dyadic_tree.h"
#include "dpdecay/estimator.h"
#include "dpdecay/random.h"

namespace dpdecay {

// Private sliding-window sum over the last W updates.
//
// The stream is cut into blocks of B time steps, each with its own dyadic
// tree T_k = T((k-1)B + 1, kB) whose counters all start at Lap(scale). A
// window ending at step i is the suffix of block k-1 plus the prefix of
// block k:
//
//   s((k-1)B, T_{k-1}) - s(i - W, T_{k-1}) + s(i, T_k)
//
// The public constructor requires W to be a power of two (B = W, scale
// (log2 W + 1)/eps). WithBlockAlignment accepts any W >= 1, using
// B = 2^ceil(log2 W) and a caller-chosen scale; the polynomial mechanism
// builds its children that way.
//
// Only the two most recent block trees are kept (unless
// MechanismOptions::retain_counters).
class WindowSum final : public CounterMechanism {
 public:
  WindowSum(int64_t window, double epsilon, RandomSource rng,
            MechanismOptions options = {});

  static WindowSum WithBlockAlignment(int64_t window, LaplaceScale scale,
                                      RandomSource rng,
                                      MechanismOptions options = {});

  // x must be in [0, 1]; returns the window estimate at the new step.
  double Push(double x) override;

  int64_t step() const override { return step_; }
  std::string_view name() const override { return "window"; }

  void VisitCounters(const CounterVisitor& visit) const override;
  size_t live_counters() const override;

  int64_t window() const { return window_; }
  int64_t block_size() const { return block_; }
  LaplaceScale noise_scale() const { return scale_; }

 private:
  WindowSum(int64_t window, int64_t block, LaplaceScale scale,
            RandomSource rng, MechanismOptions options);

  // s(u, tree), reading (and tracing) the decomposition counters.
  double Prefix(DyadicTree& tree, int64_t block_index, int64_t u);

  int64_t window_;
  int64_t block_;
  LaplaceScale scale_;
  CounterNoise noise_;
  MechanismOptions options_;
  int64_t step_ = 0;
  int64_t block_index_ = 0;  // k of current_
  std::optional<DyadicTree> previous_;
  std::optional<DyadicTree> current_;
  std::vector<DyadicTree> retired_;
};

}  // namespace dpdecay

#endif  // DPDECAY_WINDOW_SUM_H_
