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

#include "dpdecay/random.h"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "dpdecay/errors.h"

namespace dpdecay {
namespace {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

uint64_t Mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr int kZetaTerms = 1'000'000;

}  // namespace

uint64_t RandomSource::NextU64() {
  state_ += kGolden;
  return Mix64(state_);
}

double RandomSource::UniformCentered() {
  // 52 random bits shifted by half an ulp: (m + 0.5) * 2^-52 lies strictly
  // inside (0, 1) and is exactly representable.
  const double m = static_cast<double>(NextU64() >> 12);
  return (m + 0.5) * 0x1.0p-52 - 0.5;
}

double RandomSource::UniformOpen() { return UniformCentered() + 0.5; }

RandomSource RandomSource::Child(uint64_t index) const {
  return RandomSource(Mix64(Mix64(seed_) ^ Mix64(index + kGolden)));
}

LaplaceScale::LaplaceScale(double b) : b_(b) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw ParameterError("Laplace scale must be positive and finite, got " +
                         std::to_string(b));
  }
}

double LaplaceFromUniform(double u, LaplaceScale scale) {
  if (u == 0.0) return 0.0;
  const double magnitude = -scale.value() * std::log1p(-2.0 * std::fabs(u));
  return u > 0.0 ? magnitude : -magnitude;
}

double LaplaceSample(RandomSource& rng, LaplaceScale scale) {
  return LaplaceFromUniform(rng.UniformCentered(), scale);
}

void PrivacyBudget::Validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("epsilon must be positive");
  }
  if (gamma && !(*gamma > 0.0 && *gamma < 1.0)) {
    throw ParameterError("gamma must lie in (0, 1)");
  }
  double total = 0.0;
  for (double e : level_schedule) {
    if (!(e > 0.0)) throw ParameterError("level epsilons must be positive");
    total += e;
  }
  if (total > epsilon * (1.0 + 1e-9)) {
    throw ParameterError("level schedule exceeds the total budget");
  }
}

double RiemannZetaSeries(double beta) {
  if (!(beta > 1.0)) {
    throw ParameterError("zeta(beta) diverges for beta <= 1");
  }
  // Smallest terms first.
  double sum = 0.0;
  for (int n = kZetaTerms - 1; n >= 1; --n) {
    sum += std::pow(static_cast<double>(n), -beta);
  }
  const double big_n = kZetaTerms;
  const double tail = std::pow(big_n, 1.0 - beta) / (beta - 1.0) +
                      0.5 * std::pow(big_n, -beta) +
                      beta / 12.0 * std::pow(big_n, -beta - 1.0);
  return sum + tail;
}

double RiemannZeta(double beta) {
  if (beta == 2.0) return std::numbers::pi * std::numbers::pi / 6.0;
  // The series costs 10^6 pow() calls; mechanisms are constructed per trial.
  static std::mutex mu;
  static std::map<double, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(beta); it != cache.end()) return it->second;
  }
  const double value = RiemannZetaSeries(beta);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(beta, value);
  return value;
}

std::vector<double> LevelEpsilons(double epsilon, double beta, int k_max) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (k_max < 1) throw ParameterError("k_max must be positive");
  const double zeta = RiemannZeta(beta);
  std::vector<double> out;
  out.reserve(k_max);
  for (int k = 1; k <= k_max; ++k) {
    out.push_back(epsilon / (zeta * std::pow(static_cast<double>(k), beta)));
  }
  return out;
}

CounterNoise CounterNoise::Uniform(RandomSource rng, LaplaceScale scale,
                                   NoiseMode mode) {
  CounterNoise noise(rng, mode);
  noise.uniform_scale_ = scale.value();
  return noise;
}

CounterNoise CounterNoise::PerLevel(RandomSource rng, double epsilon,
                                    double beta, NoiseMode mode) {
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  CounterNoise noise(rng, mode);
  noise.per_level_ = true;
  noise.epsilon_ = epsilon;
  noise.beta_ = beta;
  noise.zeta_ = RiemannZeta(beta);
  return noise;
}

double CounterNoise::ScaleAt(int level) const {
  if (!per_level_) return uniform_scale_;
  // 1 / eps_k
  return zeta_ * std::pow(static_cast<double>(level), beta_) / epsilon_;
}

double CounterNoise::Draw(int level) {
  if (mode_ == NoiseMode::kDisabled) return 0.0;
  return LaplaceSample(rng_, LaplaceScale(ScaleAt(level)));
}

}  // namespace dpdecay
