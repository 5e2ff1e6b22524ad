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

// Helpers shared by the unit tests and the acceptance binary.

#ifndef DPDECAY_TESTS_TEST_SUPPORT_H_
#define DPDECAY_TESTS_TEST_SUPPORT_H_

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "dpdecay/baselines.h"
#include "dpdecay/decay.h"
#include "dpdecay/estimator.h"
#include "dpdecay/random.h"

namespace dpdecay::testing {

using MechanismMaker =
    std::function<std::unique_ptr<CounterMechanism>(MechanismOptions)>;

inline std::vector<double> RandomBits(RandomSource& rng, size_t n,
                                      double p = 0.5) {
  std::vector<double> xs(n);
  for (auto& x : xs) x = rng.UniformOpen() < p ? 1.0 : 0.0;
  return xs;
}

inline std::vector<double> RandomUnit(RandomSource& rng, size_t n) {
  std::vector<double> xs(n);
  for (auto& x : xs) x = rng.UniformOpen();
  return xs;
}

// Brute-force decayed sum F(j) for every prefix of xs.
inline std::vector<double> NaiveDecayedSums(const DecaySpec& decay,
                                            const std::vector<double>& xs) {
  std::vector<double> out;
  for (size_t j = 1; j <= xs.size(); ++j) {
    double f = 0.0;
    for (size_t i = 0; i < j; ++i) {
      f += xs[i] * decay.Weight(static_cast<int64_t>(j - 1 - i));
    }
    out.push_back(f);
  }
  return out;
}

inline CounterSnapshot NoiselessSnapshot(const MechanismMaker& make,
                                         const std::vector<double>& xs) {
  MechanismOptions options;
  options.noise = NoiseMode::kDisabled;
  options.retain_counters = true;
  auto mech = make(options);
  for (double x : xs) mech->Push(x);
  return mech->NoiselessCounters();
}

// Largest L1 change of the full noiseless counter vector over all
// single-position flips 0 <-> 1 of xs.
inline double MaxFlipSensitivity(const MechanismMaker& make,
                                 const std::vector<double>& xs,
                                 double* min_out = nullptr) {
  const CounterSnapshot base = NoiselessSnapshot(make, xs);
  double worst = 0.0;
  double least = INFINITY;
  std::vector<double> flipped = xs;
  for (size_t t = 0; t < xs.size(); ++t) {
    flipped[t] = 1.0 - xs[t];
    const double d = L1Distance(base, NoiselessSnapshot(make, flipped));
    worst = std::max(worst, d);
    least = std::min(least, d);
    flipped[t] = xs[t];
  }
  if (min_out != nullptr) *min_out = least;
  return worst;
}

}  // namespace dpdecay::testing

#endif  // DPDECAY_TESTS_TEST_SUPPORT_H_
