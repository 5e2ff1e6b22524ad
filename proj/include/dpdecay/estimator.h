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

#ifndef DPDECAY_ESTIMATOR_H_
#define DPDECAY_ESTIMATOR_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string_view>
#include <vector>

#include "dpdecay/dyadic_tree.h"
#include "dpdecay/random.h"

namespace dpdecay {

// The streaming contract shared by mechanisms, baselines and the oracle:
// one Push per time step, returning the estimate for that step.
class DecayedSumEstimator {
 public:
  virtual ~DecayedSumEstimator() = default;

  virtual double Push(double x) = 0;
  virtual int64_t step() const = 0;
  virtual std::string_view name() const = 0;
};

// Identifies one noisy counter: which tree instance (block, child) and which
// node interval.
struct CounterId {
  int64_t instance = 0;
  Interval interval;

  friend bool operator==(const CounterId&, const CounterId&) = default;
  friend auto operator<=>(const CounterId&, const CounterId&) = default;
};

using CounterSnapshot = std::map<CounterId, double>;
using CounterVisitor =
    std::function<void(const CounterId&, const TreeNode&)>;

struct MechanismOptions {
  NoiseMode noise = NoiseMode::kLaplace;
  // Keep counters that would otherwise be dropped (retired window blocks,
  // unreachable exponential nodes) so tests can inspect the full vector.
  bool retain_counters = false;
  // Record which counters each estimate read.
  bool trace_reads = false;
};

// A mechanism that publishes functions of noisy tree counters.
class CounterMechanism : public DecayedSumEstimator {
 public:
  virtual void VisitCounters(const CounterVisitor& visit) const = 0;
  virtual size_t live_counters() const = 0;

  // Counters read by the most recent estimate (requires trace_reads).
  const std::vector<CounterId>& last_reads() const { return last_reads_; }

  // Noise-free c0 of every live counter.
  CounterSnapshot NoiselessCounters() const;

 protected:
  std::vector<CounterId> last_reads_;
};

// Sum over the union of keys of |a[k] - b[k]| (missing keys count as 0).
double L1Distance(const CounterSnapshot& a, const CounterSnapshot& b);

}  // namespace dpdecay

#endif  // DPDECAY_ESTIMATOR_H_
