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

#ifndef DPDECAY_BASELINES_H_
#define DPDECAY_BASELINES_H_

#include <cstdint>
#include <deque>
#include <span>
#include <string_view>
#include <vector>

#include "dpdecay/all_window_sum.h"
#include "dpdecay/decay.h"
#include "dpdecay/estimator.h"
#include "dpdecay/random.h"

namespace dpdecay {

// Non-private decayed sum F(j) = sum_{i <= j} x_i g(j - i).
class ExactOracle final : public DecayedSumEstimator {
 public:
  explicit ExactOracle(DecaySpec decay);

  double Push(double x) override;
  int64_t step() const override { return step_; }
  std::string_view name() const override { return "oracle"; }

  const DecaySpec& decay() const { return decay_; }

  // Naive O(j) evaluation of F at the end of `xs`.
  static double DirectSum(const DecaySpec& decay, std::span<const double> xs);

 private:
  DecaySpec decay_;
  int64_t step_ = 0;
  double rolling_ = 0.0;
  std::deque<double> window_;   // window kind: last W inputs
  std::vector<double> history_;  // polynomial kind
};

// Randomized response on bits: each update is flipped with probability
// 1/2 - flip/2 and the estimator debiases the stored bits,
// sum_i g(j - i) (y_i - (1/2 - flip/2)) / flip.
class RandomizedResponse final : public DecayedSumEstimator {
 public:
  RandomizedResponse(double flip, DecaySpec decay, RandomSource rng);

  // x must be exactly 0 or 1.
  double Push(double x) override;
  int64_t step() const override { return inner_.step(); }
  std::string_view name() const override { return "rr"; }

  double flip() const { return flip_; }
  double flip_probability() const { return 0.5 - 0.5 * flip_; }
  const std::vector<uint8_t>& stored_bits() const { return bits_; }

 private:
  double flip_;
  RandomSource rng_;
  ExactOracle inner_;
  std::vector<uint8_t> bits_;
};

// Privacy parameter ln((1 + f) / (1 - f)) achieved by randomized response
// with flip parameter f.
double RandomizedResponseEpsilon(double flip);

// Flip parameter f with ln((1 + f) / (1 - f)) = epsilon, i.e. tanh(eps / 2).
double MatchedFlipParameter(double epsilon);

// Window estimate obtained from a private running sum as s(j) - s(j - W).
// Its error grows with j because both prefixes carry their own noise.
class RunningDifferenceWindow final : public DecayedSumEstimator {
 public:
  RunningDifferenceWindow(int64_t window, double epsilon, double level_beta,
                          RandomSource rng, MechanismOptions options = {});

  double Push(double x) override;
  int64_t step() const override { return inner_.step(); }
  std::string_view name() const override { return "strawman"; }

 private:
  int64_t window_;
  AllWindowSum inner_;
};

}  // namespace dpdecay

#endif  // DPDECAY_BASELINES_H_
