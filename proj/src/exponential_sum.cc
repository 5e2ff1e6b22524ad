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

#include "dpdecay/exponential_sum.h"

#include <cmath>
#include <string>

#include "dpdecay/errors.h"
#include "dpdecay/sensitivity.h"

namespace dpdecay {
namespace {

double CheckedLambda(double alpha, double epsilon) {
  if (!(alpha > 2.0 / 3.0 && alpha < 1.0)) {
    throw ParameterError("ExponentialSum needs alpha in (2/3, 1)");
  }
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  return SensitivityLambdaExp(alpha);
}

}  // namespace

ExponentialSum::ExponentialSum(double alpha, double epsilon,
                               RandomSource rng, MechanismOptions options)
    : alpha_(alpha),
      lambda_(CheckedLambda(alpha, epsilon)),
      scale_(lambda_ / epsilon),
      noise_(CounterNoise::Uniform(rng, scale_, options.noise)),
      options_(options),
      tree_(1, 1) {}

double ExponentialSum::Decay(int64_t n) const {
  const double w = std::pow(alpha_, static_cast<double>(n));
  return w < 1e-300 ? 0.0 : w;
}

double ExponentialSum::Push(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw RangeError("update " + std::to_string(x) + " outside [0, 1]");
  }
  const int64_t i = ++step_;
  if (i > tree_.hi()) tree_.GrowDouble(i, Decay(i - 1), noise_);

  const Interval root = tree_.root();
  tree_.ForEachAncestor(i, [&](const Interval& iv) {
    if (iv == root || tree_.IsLeftNode(iv)) {
      tree_.Touch(iv, noise_).c0 += x * Decay(iv.u - i);
    }
  });

  last_reads_.clear();
  double estimate = 0.0;
  ForEachPrefixNode(1, i, [&](const Interval& iv) {
    estimate += tree_.Touch(iv, noise_).value() * Decay(i - iv.u);
    if (options_.trace_reads) last_reads_.push_back({0, iv});
  });

  if (!options_.retain_counters) tree_.EvictUnreachable(i);
  return estimate;
}

void ExponentialSum::VisitCounters(const CounterVisitor& visit) const {
  tree_.ForEachNode([&](const Interval& iv, const TreeNode& node) {
    visit(CounterId{0, iv}, node);
  });
}

}  // namespace dpdecay
