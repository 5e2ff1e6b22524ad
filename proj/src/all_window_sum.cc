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

#include "dpdecay/all_window_sum.h"

#include <bit>
#include <string>

#include "dpdecay/errors.h"

namespace dpdecay {

AllWindowSum::AllWindowSum(double epsilon, double level_beta,
                           RandomSource rng, MechanismOptions options)
    : epsilon_(epsilon),
      level_beta_(level_beta),
      noise_(CounterNoise::PerLevel(rng, epsilon, level_beta, options.noise)),
      options_(options),
      tree_(1, 1) {}

void AllWindowSum::Push(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw RangeError("update " + std::to_string(x) + " outside [0, 1]");
  }
  const int64_t i = ++step_;
  if (i > tree_.hi()) tree_.GrowDouble(i, 1.0, noise_);
  tree_.ForEachAncestor(i, [&](const Interval& iv) {
    tree_.Touch(iv, noise_).c0 += x;
  });
}

double AllWindowSum::Prefix(int64_t block_lo, int64_t u) {
  double sum = 0.0;
  ForEachPrefixNode(block_lo, u, [&](const Interval& iv) {
    sum += tree_.Touch(iv, noise_).value();
    if (options_.trace_reads) reads_.push_back({0, iv});
  });
  return sum;
}

double AllWindowSum::RunningQuery(int64_t j) {
  if (j < 0 || j > step_) {
    throw RangeError("query step " + std::to_string(j) +
                     " outside [0, " + std::to_string(step_) + "]");
  }
  return Prefix(1, j);
}

double AllWindowSum::Query(int64_t j, int64_t window) {
  if (window < 1) throw RangeError("window must be >= 1");
  if (j < 1 || j > step_) {
    throw RangeError("query step " + std::to_string(j) +
                     " outside [1, " + std::to_string(step_) + "]");
  }
  if (window >= j) return RunningQuery(j);

  const auto block = static_cast<int64_t>(
      std::bit_ceil(static_cast<uint64_t>(window)));
  const int64_t k = (j - 1) / block + 1;
  const int64_t block_lo = (k - 1) * block + 1;
  const int64_t lagged = j - window;
  if (lagged >= block_lo - 1) {
    return Prefix(block_lo, j) - Prefix(block_lo, lagged);
  }
  // k >= 2 here: lagged < block_lo - 1 and lagged > 0.
  const int64_t prev_lo = block_lo - block;
  return Prefix(prev_lo, block_lo - 1) - Prefix(prev_lo, lagged) +
         Prefix(block_lo, j);
}

void AllWindowSum::VisitCounters(const CounterVisitor& visit) const {
  tree_.ForEachNode([&](const Interval& iv, const TreeNode& node) {
    visit(CounterId{0, iv}, node);
  });
}

RunningSum::RunningSum(double epsilon, double level_beta, RandomSource rng,
                       MechanismOptions options)
    : inner_(epsilon, level_beta, rng, options),
      trace_(options.trace_reads) {}

double RunningSum::Push(double x) {
  inner_.Push(x);
  inner_.reads().clear();
  const double estimate = inner_.RunningQuery(inner_.step());
  if (trace_) last_reads_ = inner_.reads();
  return estimate;
}

AllWindowStream::AllWindowStream(int64_t window, double epsilon,
                                 double level_beta, RandomSource rng,
                                 MechanismOptions options)
    : window_(window),
      inner_(epsilon, level_beta, rng, options),
      trace_(options.trace_reads) {
  if (window < 1) throw ParameterError("window must be >= 1");
}

double AllWindowStream::Push(double x) {
  inner_.Push(x);
  inner_.reads().clear();
  const double estimate = inner_.Query(inner_.step(), window_);
  if (trace_) last_reads_ = inner_.reads();
  return estimate;
}

}  // namespace dpdecay
