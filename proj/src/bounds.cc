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

#include "dpdecay/bounds.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "dpdecay/errors.h"
#include "dpdecay/polynomial_sum.h"
#include "dpdecay/random.h"
#include "dpdecay/sensitivity.h"

namespace dpdecay {
namespace {

void CheckGamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("gamma must be in (0, 1)");
  }
}

void CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
}

int Log2Exact(uint64_t n) { return std::bit_width(n) - 1; }

}  // namespace

double NoiseProfile::sigma() const {
  double sum = 0.0;
  for (double b : scales) sum += b * b;
  return std::sqrt(2.0 * sum);
}

double NoiseProfile::max_scale() const {
  double m = 0.0;
  for (double b : scales) m = std::max(m, b);
  return m;
}

double LaplaceTail(const NoiseProfile& profile, double t, double lam) {
  if (profile.scales.empty()) throw ParameterError("empty noise profile");
  const double limit = 0.75 / profile.max_scale();
  if (!(lam > 0.0 && lam < limit)) {
    throw DomainError("lambda must be in (0, 0.75 / max b)");
  }
  if (!(t > 0.0)) throw DomainError("t must be positive");
  const double sigma = profile.sigma();
  const double bound =
      2.0 * std::exp(0.75 * lam * lam * sigma * sigma - lam * t * sigma);
  return std::clamp(bound, 0.0, 1.0);
}

UtilityBound UtilityDeltaDetail(const NoiseProfile& profile, double gamma) {
  if (profile.scales.empty()) throw ParameterError("empty noise profile");
  CheckGamma(gamma);
  const double var = profile.sigma() * profile.sigma();
  const double log_term = std::log(2.0 / gamma);
  const double boundary = 0.75 / profile.max_scale();
  UtilityBound out;
  out.lambda = std::sqrt(log_term / (0.75 * var));
  if (!(out.lambda < boundary)) {
    out.lambda = boundary;
    out.interior = false;
  }
  out.delta = 0.75 * out.lambda * var + log_term / out.lambda;
  return out;
}

double UtilityDelta(const NoiseProfile& profile, double gamma) {
  return UtilityDeltaDetail(profile, gamma).delta;
}

double HoeffdingDelta(const std::vector<double>& ranges, double gamma) {
  CheckGamma(gamma);
  double sum = 0.0;
  for (double r : ranges) sum += r * r;
  return std::sqrt(std::log(2.0 / gamma) * sum / 2.0);
}

NoiseProfile WindowNoiseProfile(int64_t window, double epsilon) {
  CheckEpsilon(epsilon);
  return AlignedWindowNoiseProfile(window,
                                   WindowSensitivity(window) / epsilon);
}

NoiseProfile AlignedWindowNoiseProfile(int64_t window, double scale) {
  if (window < 1) throw ParameterError("window must be at least 1");
  const int levels = Log2Exact(std::bit_ceil(static_cast<uint64_t>(window)));
  return NoiseProfile{
      std::vector<double>(static_cast<size_t>(2 * levels + 1), scale)};
}

NoiseProfile RunningNoiseProfile(int64_t j, double epsilon,
                                 double level_beta) {
  CheckEpsilon(epsilon);
  if (j < 1) throw RangeError("running profile needs j >= 1");
  const double zeta = RiemannZeta(level_beta);
  NoiseProfile out;
  const int levels = std::bit_width(static_cast<uint64_t>(j));
  for (int k = 1; k <= levels; ++k) {
    out.scales.push_back(zeta * std::pow(k, level_beta) / epsilon);
  }
  return out;
}

NoiseProfile AllWindowNoiseProfile(int64_t window, int64_t j, double epsilon,
                                   double level_beta) {
  if (window < 1) throw ParameterError("window must be at least 1");
  if (window >= j) return RunningNoiseProfile(j, epsilon, level_beta);
  CheckEpsilon(epsilon);
  const double zeta = RiemannZeta(level_beta);
  const int levels = Log2Exact(std::bit_ceil(static_cast<uint64_t>(window)));
  auto scale = [&](int k) { return zeta * std::pow(k, level_beta) / epsilon; };
  NoiseProfile out;
  out.scales.push_back(scale(levels + 1));
  for (int k = 1; k <= levels; ++k) {
    out.scales.push_back(scale(k));
    out.scales.push_back(scale(k));
  }
  return out;
}

NoiseProfile RunningDifferenceNoiseProfile(int64_t window, int64_t j,
                                           double epsilon, double level_beta) {
  NoiseProfile out = RunningNoiseProfile(j, epsilon, level_beta);
  if (j > window) {
    const NoiseProfile tail = RunningNoiseProfile(j - window, epsilon,
                                                  level_beta);
    out.scales.insert(out.scales.end(), tail.scales.begin(),
                      tail.scales.end());
  }
  return out;
}

NoiseProfile ExponentialNoiseProfile(double alpha, int64_t j, double epsilon) {
  CheckEpsilon(epsilon);
  if (j < 1) throw RangeError("exponential profile needs j >= 1");
  const double b = SensitivityLambdaExp(alpha) / epsilon;
  NoiseProfile out;
  const int nodes = std::bit_width(static_cast<uint64_t>(j));
  for (int m = 0; m < nodes; ++m) {
    const double age = std::ldexp(1.0, m) - 1.0;
    const double s = b * std::pow(alpha, age);
    if (!(s > 1e-300)) break;
    out.scales.push_back(s);
  }
  return out;
}

NoiseProfile PolynomialNoiseProfile(double c, double beta, int64_t j,
                                    double epsilon) {
  CheckEpsilon(epsilon);
  if (j < 1) throw RangeError("polynomial profile needs j >= 1");
  const double lambda = std::max(SensitivityLambdaPoly(c, beta),
                                 PolynomialSum::StructuralSensitivity(c, beta));
  const double scale = lambda / epsilon;
  NoiseProfile out;
  for (const auto& seg : PolynomialSum::Segments(c, beta, j)) {
    const NoiseProfile child = AlignedWindowNoiseProfile(seg.width, scale);
    out.scales.insert(out.scales.end(), child.scales.begin(),
                      child.scales.end());
  }
  return out;
}

double RandomizedResponseDelta(const DecaySpec& decay, double flip, int64_t j,
                               double gamma) {
  if (!(flip > 0.0 && flip <= 1.0)) {
    throw DomainError("flip parameter must be in (0, 1]");
  }
  std::vector<double> ranges;
  ranges.reserve(static_cast<size_t>(std::max<int64_t>(j, 0)));
  for (int64_t age = 0; age < j; ++age) {
    const double g = decay.Weight(age);
    if (g == 0.0 && decay.kind == DecaySpec::Kind::kWindow) break;
    ranges.push_back(g / flip);
  }
  return HoeffdingDelta(ranges, gamma);
}

}  // namespace dpdecay
