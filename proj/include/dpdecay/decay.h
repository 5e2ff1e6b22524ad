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

#ifndef DPDECAY_DECAY_H_
#define DPDECAY_DECAY_H_

#include <cstdint>
#include <string>

namespace dpdecay {

// Which decay function g a decayed sum F(j) = sum_i x_i g(j - i) uses.
struct DecaySpec {
  enum class Kind { kWindow, kExponential, kPolynomial, kRunning };

  static DecaySpec Window(int64_t window);
  static DecaySpec Exponential(double alpha);
  // `beta` is the multiplicative accuracy parameter of the polynomial
  // mechanism; it does not change g.
  static DecaySpec Polynomial(double c, double beta);
  static DecaySpec Running();

  // g(age): window 1{age < W}, exponential alpha^age, polynomial
  // (age + 1)^-c, running 1.
  double Weight(int64_t age) const;

  // Throws ParameterError on W < 1, alpha outside (0, 1), c <= 1 or beta
  // outside (0, 1).
  void Validate() const;

  std::string ToString() const;

  Kind kind = Kind::kRunning;
  int64_t window = 0;
  double alpha = 0.0;
  double c = 0.0;
  double beta = 0.0;
};

// Generalized harmonic number H_c(m) = sum_{k=1..m} k^-c.
double GeneralizedHarmonic(double c, int64_t m);

}  // namespace dpdecay

#endif  // DPDECAY_DECAY_H_
