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

#ifndef DPDECAY_LOWER_BOUND_H_
#define DPDECAY_LOWER_BOUND_H_

#include <cstdint>
#include <vector>

#include "dpdecay/decay.h"

namespace dpdecay {

// Instances x^0 = 0^{Dq} and x^a = (0^{(a-1)D}, 1^D, 0^{(q-a)D}) for
// a = 1..q, with query set Q = {j <= Dq : D divides j}.
struct LowerBoundFamily {
  int64_t q = 0;
  int64_t d = 0;
  std::vector<std::vector<uint8_t>> instances;  // index a = 0..q
  std::vector<int64_t> queries;

  int64_t length() const { return d * q; }
};

LowerBoundFamily BuildLowerBoundFamily(int64_t q, int64_t d);

int64_t HammingDistance(const std::vector<uint8_t>& a,
                        const std::vector<uint8_t>& b);

struct PairWitness {
  int64_t a = 0;
  int64_t b = 0;
  bool separated = false;
  // First query step with gap > 2 delta when separated; otherwise the step
  // of the largest gap.
  int64_t j = 0;
  double gap = 0.0;
};

struct IndependenceReport {
  bool passed = true;
  double delta = 0.0;
  std::vector<PairWitness> pairs;  // every unordered pair a < b
};

// Checks |F(x^a)(j) - F(x^b)(j)| > 2 delta for some j in Q, for every pair,
// using the exact oracle.
IndependenceReport CheckIndependence(const LowerBoundFamily& family,
                                     const DecaySpec& decay, double delta);

struct ClosenessReport {
  bool passed = true;      // d_H(x^0, x^a) <= D for all a >= 1
  int64_t max_to_zero = 0;
  int64_t all_pairs_max = 0;
};

ClosenessReport CheckCloseness(const LowerBoundFamily& family, int64_t d);

// (ln N + ln 2) / eps.
double FrameworkThreshold(int64_t n, double epsilon);

// G(m) / 2 with G(x) = sum_{i < x} g(i) and m = max(1, floor(ln(1/gamma) /
// eps)); the running decay gives m / 2.
double ReferenceDelta(const DecaySpec& decay, double gamma, double epsilon);

}  // namespace dpdecay

#endif  // DPDECAY_LOWER_BOUND_H_
