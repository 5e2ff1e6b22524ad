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

#ifndef DPDECAY_BOUNDS_H_
#define DPDECAY_BOUNDS_H_

#include <cstdint>
#include <vector>

#include "dpdecay/decay.h"

namespace dpdecay {

// Scales b_i of the independent Laplace terms that make up one estimate.
struct NoiseProfile {
  std::vector<double> scales;

  // sqrt(2 * sum b_i^2).
  double sigma() const;
  double max_scale() const;
};

// Tail bound Pr[|S| >= t sigma] <= 2 exp(0.75 lam^2 sigma^2 - lam t sigma),
// clamped to [0, 1]. Requires 0 < lam < 0.75 / max b_i (DomainError).
double LaplaceTail(const NoiseProfile& profile, double t, double lam);

struct UtilityBound {
  double delta = 0.0;
  double lambda = 0.0;
  // True when the unconstrained minimizer was admissible; false when the
  // optimum sits at the boundary 0.75 / max b_i.
  bool interior = true;
};

// min over admissible lam of 0.75 lam sigma^2 + ln(2 / gamma) / lam, so that
// |S| <= delta with probability at least 1 - gamma.
UtilityBound UtilityDeltaDetail(const NoiseProfile& profile, double gamma);
double UtilityDelta(const NoiseProfile& profile, double gamma);

// Hoeffding radius sqrt(ln(2 / gamma) * sum r_i^2 / 2) for a sum of
// independent terms with ranges r_i.
double HoeffdingDelta(const std::vector<double>& ranges, double gamma);

// Worst-case noise profiles over all queries at step j.
//
// Window of size W (power of two): at most 2 log2 W + 1 counters, each of
// scale (log2 W + 1) / eps.
NoiseProfile WindowNoiseProfile(int64_t window, double epsilon);
// Block-aligned window (block = next power of two >= W) with uniform scale.
NoiseProfile AlignedWindowNoiseProfile(int64_t window, double scale);
// Growing-tree window query (W < j) or running prefix (W >= j) with per-level
// scales zeta(beta) k^beta / eps.
NoiseProfile AllWindowNoiseProfile(int64_t window, int64_t j, double epsilon,
                                   double level_beta);
NoiseProfile RunningNoiseProfile(int64_t j, double epsilon,
                                 double level_beta);
// Two independent running prefixes, s(j) - s(j - W).
NoiseProfile RunningDifferenceNoiseProfile(int64_t window, int64_t j,
                                           double epsilon, double level_beta);
// Decomposition node k (counted from the right) is at least 2^k - 1 steps old.
NoiseProfile ExponentialNoiseProfile(double alpha, int64_t j, double epsilon);
NoiseProfile PolynomialNoiseProfile(double c, double beta, int64_t j,
                                    double epsilon);

// Hoeffding radius of the randomized-response estimate at step j.
double RandomizedResponseDelta(const DecaySpec& decay, double flip, int64_t j,
                               double gamma);

}  // namespace dpdecay

#endif  // DPDECAY_BOUNDS_H_
