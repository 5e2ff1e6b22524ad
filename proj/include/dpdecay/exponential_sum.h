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

#ifndef DPDECAY_EXPONENTIAL_SUM_H_
#define DPDECAY_EXPONENTIAL_SUM_H_

#include <cstdint>
#include <string_view>

#include "dpdecay/dyadic_tree.h"
#include "dpdecay/estimator.h"
#include "dpdecay/random.h"

namespace dpdecay {

// Private exponentially decayed sum F(j) = sum_i x_i alpha^(j - i) for
// alpha in (2/3, 1).
//
// A single growing tree where node [l, u] accumulates sum x_i alpha^(u - i)
// over its leaves. An update only reaches left-node ancestors and the current
// root, which keeps the L1 sensitivity below lambda(alpha). On growth the new
// root is seeded with alpha^(i-1) times the old root's noiseless value. The
// estimate weights each node of the prefix decomposition of [1, j] by
// alpha^(j - u).
//
// Nodes whose parent is complete are unreachable and are evicted, leaving at
// most one live node per level.
class ExponentialSum final : public CounterMechanism {
 public:
  ExponentialSum(double alpha, double epsilon, RandomSource rng,
                 MechanismOptions options = {});

  double Push(double x) override;
  int64_t step() const override { return step_; }
  std::string_view name() const override { return "exp"; }

  void VisitCounters(const CounterVisitor& visit) const override;
  size_t live_counters() const override { return tree_.live_nodes(); }

  double alpha() const { return alpha_; }
  double lambda() const { return lambda_; }
  LaplaceScale noise_scale() const { return scale_; }
  const DyadicTree& tree() const { return tree_; }

 private:
  // alpha^n, flushed to 0 below 1e-300.
  double Decay(int64_t n) const;

  double alpha_;
  double lambda_;
  LaplaceScale scale_;
  CounterNoise noise_;
  MechanismOptions options_;
  DyadicTree tree_;
  int64_t step_ = 0;
};

}  // namespace dpdecay

#endif  // DPDECAY_EXPONENTIAL_SUM_H_
