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

#ifndef DPDECAY_POLYNOMIAL_SUM_H_
#define DPDECAY_POLYNOMIAL_SUM_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "dpdecay/estimator.h"
#include "dpdecay/random.h"
#include "dpdecay/window_sum.h"

namespace dpdecay {

// Private polynomially decayed sum with g(i) = (i + 1)^-c, approximated
// within a (1 - beta) factor.
//
// With breakpoints b(0) = 0, b(j) = max{i : g(i) >= (1 - beta)^j}, the decay
// is replaced by the step function
//
//   g'(0) = 1,   g'(i) = (1 - beta)^j  for i in (b(j-1), b(j)],
//
// so that (1 - beta) F <= F' <= F. Each step of g' is a window sum over a
// lagged, scaled copy of the stream: segment j runs a WindowSum of width
// b(j) - b(j-1) on the inputs (1 - beta)^j x_{i - b(j-1) - 1}. Empty segments
// (b(j) == b(j-1)) are skipped. Every child counter gets the same noise
// scale lambda / eps, where lambda bounds the total L1 sensitivity.
class PolynomialSum final : public CounterMechanism {
 public:
  struct Segment {
    int64_t index = 0;      // j (0 for the lag-0 segment)
    int64_t lag_begin = 0;  // smallest lag covered
    int64_t width = 1;      // number of lags covered
    double weight = 1.0;    // value of g' on the segment
  };

  PolynomialSum(double c, double beta, double epsilon, RandomSource rng,
                MechanismOptions options = {});

  double Push(double x) override;
  int64_t step() const override { return step_; }
  std::string_view name() const override { return "poly"; }

  void VisitCounters(const CounterVisitor& visit) const override;
  size_t live_counters() const override;

  // b(j) = floor((1 - beta)^(-j/c)) - 1, saturating at 2^62.
  static int64_t Breakpoint(double c, double beta, int64_t j);

  // Non-empty segments with lag_begin < max_lag, in lag order.
  static std::vector<Segment> Segments(double c, double beta,
                                       int64_t max_lag);

  // Sum over all segments of weight * (counters touched per update).
  static double StructuralSensitivity(double c, double beta);

  double c() const { return c_; }
  double beta() const { return beta_; }
  double lambda() const { return lambda_; }
  LaplaceScale noise_scale() const { return scale_; }
  size_t live_children() const { return children_.size(); }
  const Segment& child_segment(size_t k) const { return children_[k].segment; }

 private:
  struct Child {
    Segment segment;
    WindowSum window;
    double last = 0.0;
  };

  void SpawnDueChildren();

  double c_;
  double beta_;
  double lambda_;
  LaplaceScale scale_;
  RandomSource rng_;
  MechanismOptions options_;
  std::vector<double> history_;
  std::vector<Child> children_;
  int64_t next_segment_ = 0;  // j of the next segment to inspect
  int64_t step_ = 0;
};

}  // namespace dpdecay

#endif  // DPDECAY_POLYNOMIAL_SUM_H_
