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

#ifndef DPDECAY_ALL_WINDOW_SUM_H_
#define DPDECAY_ALL_WINDOW_SUM_H_

#include <cstdint>
#include <string_view>

#include "dpdecay/dyadic_tree.h"
#include "dpdecay/estimator.h"
#include "dpdecay/random.h"

namespace dpdecay {

// One growing dyadic tree T(1, U) that answers window queries for every W at
// once. Level-k counters carry Lap(1/eps_k) noise with
// eps_k = eps / (zeta(beta) k^beta), so the levels compose to eps.
//
// For a query (j, W) the tree is viewed as blocks of W' = 2^ceil(log2 W)
// steps; each block is a subtree, and the window is assembled from a suffix
// of block k-1 and a prefix of block k exactly as in WindowSum.
class AllWindowSum {
 public:
  AllWindowSum(double epsilon, double level_beta, RandomSource rng,
               MechanismOptions options = {});

  // Grows the tree when full (unit carry), then adds x to every ancestor of
  // the new leaf.
  void Push(double x);

  // Window estimate for the window of size W ending at j, 1 <= j <= step().
  // W >= j is answered with the running-sum prefix s(j, T).
  double Query(int64_t j, int64_t window);

  // Private prefix sum s(j, T); 0 for j == 0.
  double RunningQuery(int64_t j);

  int64_t step() const { return step_; }
  const DyadicTree& tree() const { return tree_; }
  double epsilon() const { return epsilon_; }
  double level_beta() const { return level_beta_; }
  double ScaleAtLevel(int level) const { return noise_.ScaleAt(level); }

  void VisitCounters(const CounterVisitor& visit) const;
  size_t live_counters() const { return tree_.live_nodes(); }
  std::vector<CounterId>& reads() { return reads_; }

 private:
  double Prefix(int64_t block_lo, int64_t u);

  double epsilon_;
  double level_beta_;
  CounterNoise noise_;
  MechanismOptions options_;
  DyadicTree tree_;
  int64_t step_ = 0;
  std::vector<CounterId> reads_;
};

// Streaming running sum: push x, publish s(step, T).
class RunningSum final : public CounterMechanism {
 public:
  RunningSum(double epsilon, double level_beta, RandomSource rng,
             MechanismOptions options = {});

  double Push(double x) override;
  int64_t step() const override { return inner_.step(); }
  std::string_view name() const override { return "running"; }
  void VisitCounters(const CounterVisitor& visit) const override {
    inner_.VisitCounters(visit);
  }
  size_t live_counters() const override { return inner_.live_counters(); }

  double Query(int64_t j) { return inner_.RunningQuery(j); }
  double epsilon() const { return inner_.epsilon(); }

 private:
  AllWindowSum inner_;
  bool trace_;
};

// Streaming adapter publishing AllWindowSum::Query(step, W) for a fixed W.
class AllWindowStream final : public CounterMechanism {
 public:
  AllWindowStream(int64_t window, double epsilon, double level_beta,
                  RandomSource rng, MechanismOptions options = {});

  double Push(double x) override;
  int64_t step() const override { return inner_.step(); }
  std::string_view name() const override { return "allwindow"; }
  void VisitCounters(const CounterVisitor& visit) const override {
    inner_.VisitCounters(visit);
  }
  size_t live_counters() const override { return inner_.live_counters(); }

  AllWindowSum& inner() { return inner_; }
  int64_t window() const { return window_; }

 private:
  int64_t window_;
  AllWindowSum inner_;
  bool trace_;
};

}  // namespace dpdecay

#endif  // DPDECAY_ALL_WINDOW_SUM_H_
