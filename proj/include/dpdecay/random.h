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

// Seeded randomness, Laplace sampling and privacy-budget schedules.
//
// NOTE: RandomSource is a splitmix64 counter generator. It is statistically
// strong and reproducible across platforms, but it is NOT a cryptographic
// generator and the Laplace sampler works in plain IEEE double precision.
// This library studies accuracy; do not deploy it where an adversary can
// exploit RNG state or floating-point artifacts.

#ifndef DPDECAY_RANDOM_H_
#define DPDECAY_RANDOM_H_

#include <cstdint>
#include <optional>
#include <vector>

namespace dpdecay {

class RandomSource {
 public:
  explicit RandomSource(uint64_t seed) : seed_(seed), state_(seed) {}

  uint64_t NextU64();

  // Uniform on the open interval (-1/2, 1/2); never returns an endpoint.
  double UniformCentered();

  // Uniform on the open interval (0, 1).
  double UniformOpen();

  // Independent stream derived from this source's seed and `index`. Depends
  // only on the seed, not on how many values have been drawn.
  RandomSource Child(uint64_t index) const;

  uint64_t seed() const { return seed_; }

 private:
  uint64_t seed_;
  uint64_t state_;
};

// Scale b > 0 of a zero-mean Laplace distribution (variance 2b^2).
class LaplaceScale {
 public:
  explicit LaplaceScale(double b);
  double value() const { return b_; }
  double variance() const { return 2.0 * b_ * b_; }

 private:
  double b_;
};

// Inverse-CDF transform of a uniform u in (-1/2, 1/2):
// -b * sign(u) * ln(1 - 2|u|).
double LaplaceFromUniform(double u, LaplaceScale scale);

double LaplaceSample(RandomSource& rng, LaplaceScale scale);

struct PrivacyBudget {
  double epsilon = 1.0;
  std::optional<double> gamma;
  std::vector<double> level_schedule;

  // Throws ParameterError if epsilon <= 0, gamma outside (0, 1), a schedule
  // entry is non-positive, or the schedule sums above epsilon.
  void Validate() const;
};

// zeta(beta) for beta > 1. beta == 2 returns pi^2/6 exactly; otherwise a
// 10^6-term series plus Euler-Maclaurin tail.
double RiemannZeta(double beta);

// Same as RiemannZeta without the closed-form shortcut.
double RiemannZetaSeries(double beta);

// [eps_1, ..., eps_kmax] with eps_k = epsilon / (zeta(beta) k^beta).
std::vector<double> LevelEpsilons(double epsilon, double beta, int k_max);

enum class NoiseMode { kLaplace, kDisabled };

// Source of the initialization noise of tree counters. Either one scale for
// every counter, or the per-level schedule 1/eps_k of the all-window tree.
// With NoiseMode::kDisabled every draw is exactly 0 (non-private; tests and
// oracle comparisons only).
class CounterNoise {
 public:
  static CounterNoise Uniform(RandomSource rng, LaplaceScale scale,
                              NoiseMode mode = NoiseMode::kLaplace);
  static CounterNoise PerLevel(RandomSource rng, double epsilon, double beta,
                               NoiseMode mode = NoiseMode::kLaplace);

  // Noise for a freshly created counter at tree level `level` (leaves = 1).
  double Draw(int level);

  double ScaleAt(int level) const;
  bool enabled() const { return mode_ == NoiseMode::kLaplace; }
  bool per_level() const { return per_level_; }

 private:
  CounterNoise(RandomSource rng, NoiseMode mode)
      : rng_(rng), mode_(mode) {}

  RandomSource rng_;
  NoiseMode mode_;
  bool per_level_ = false;
  double uniform_scale_ = 1.0;
  double epsilon_ = 1.0;
  double beta_ = 2.0;
  double zeta_ = 0.0;
};

}  // namespace dpdecay

#endif  // DPDECAY_RANDOM_H_
