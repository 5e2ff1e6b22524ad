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

#include "dpdecay/factory.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "dpdecay/all_window_sum.h"
#include "dpdecay/baselines.h"
#include "dpdecay/errors.h"
#include "dpdecay/exponential_sum.h"
#include "dpdecay/polynomial_sum.h"
#include "dpdecay/sensitivity.h"
#include "dpdecay/window_sum.h"

namespace dpdecay {
namespace {

using Kind = DecaySpec::Kind;

bool IsPowerOfTwo(int64_t n) {
  return n > 0 && std::has_single_bit(static_cast<uint64_t>(n));
}

}  // namespace

MechanismKind ParseMechanismKind(std::string_view name) {
  if (name == "window") return MechanismKind::kWindow;
  if (name == "allwindow") return MechanismKind::kAllWindow;
  if (name == "exp") return MechanismKind::kExponential;
  if (name == "poly") return MechanismKind::kPolynomial;
  if (name == "running") return MechanismKind::kRunning;
  if (name == "rr") return MechanismKind::kRandomizedResponse;
  if (name == "oracle") return MechanismKind::kOracle;
  throw ParameterError("unknown mechanism '" + std::string(name) + "'");
}

std::string_view MechanismName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kWindow: return "window";
    case MechanismKind::kAllWindow: return "allwindow";
    case MechanismKind::kExponential: return "exp";
    case MechanismKind::kPolynomial: return "poly";
    case MechanismKind::kRunning: return "running";
    case MechanismKind::kRandomizedResponse: return "rr";
    case MechanismKind::kOracle: return "oracle";
  }
  return "unknown";
}

void MechanismConfig::Validate() const {
  decay.Validate();
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (!(level_beta > 1.0)) throw ParameterError("level beta must exceed 1");
  auto need = [&](Kind k, const char* what) {
    if (decay.kind != k) {
      throw ParameterError(std::string(MechanismName(kind)) + " needs " +
                           what + " decay");
    }
  };
  switch (kind) {
    case MechanismKind::kWindow:
      need(Kind::kWindow, "window");
      if (!IsPowerOfTwo(decay.window)) {
        throw ParameterError("window size " + std::to_string(decay.window) +
                             " is not a power of two; use --mech allwindow");
      }
      break;
    case MechanismKind::kAllWindow:
      need(Kind::kWindow, "window");
      break;
    case MechanismKind::kExponential:
      need(Kind::kExponential, "exponential");
      if (!(decay.alpha > 2.0 / 3.0)) {
        throw ParameterError("exp needs alpha in (2/3, 1)");
      }
      break;
    case MechanismKind::kPolynomial:
      need(Kind::kPolynomial, "polynomial");
      break;
    case MechanismKind::kRunning:
      need(Kind::kRunning, "running");
      break;
    case MechanismKind::kRandomizedResponse:
      if (flip && !(*flip > 0.0 && *flip <= 1.0)) {
        throw ParameterError("flip parameter must be in (0, 1]");
      }
      break;
    case MechanismKind::kOracle:
      break;
  }
}

double MechanismConfig::ResolvedFlip() const {
  return flip ? *flip : MatchedFlipParameter(epsilon);
}

std::unique_ptr<DecayedSumEstimator> MakeEstimator(
    const MechanismConfig& config, RandomSource rng,
    MechanismOptions options) {
  config.Validate();
  options.noise = config.noise;
  switch (config.kind) {
    case MechanismKind::kWindow:
      return std::make_unique<WindowSum>(config.decay.window, config.epsilon,
                                         rng, options);
    case MechanismKind::kAllWindow:
      return std::make_unique<AllWindowStream>(
          config.decay.window, config.epsilon, config.level_beta, rng,
          options);
    case MechanismKind::kExponential:
      return std::make_unique<ExponentialSum>(config.decay.alpha,
                                              config.epsilon, rng, options);
    case MechanismKind::kPolynomial:
      return std::make_unique<PolynomialSum>(
          config.decay.c, config.decay.beta, config.epsilon, rng, options);
    case MechanismKind::kRunning:
      return std::make_unique<RunningSum>(config.epsilon, config.level_beta,
                                          rng, options);
    case MechanismKind::kRandomizedResponse:
      if (config.noise == NoiseMode::kDisabled) {
        return std::make_unique<RandomizedResponse>(1.0, config.decay, rng);
      }
      return std::make_unique<RandomizedResponse>(config.ResolvedFlip(),
                                                  config.decay, rng);
    case MechanismKind::kOracle:
      return std::make_unique<ExactOracle>(config.decay);
  }
  throw ParameterError("unknown mechanism");
}

std::optional<double> MechanismSensitivity(const MechanismConfig& config,
                                           int64_t horizon) {
  config.Validate();
  switch (config.kind) {
    case MechanismKind::kWindow:
      return WindowSensitivity(config.decay.window);
    case MechanismKind::kAllWindow:
    case MechanismKind::kRunning:
      return static_cast<double>(
          std::bit_width(std::bit_ceil(static_cast<uint64_t>(
              std::max<int64_t>(horizon, 1)))));
    case MechanismKind::kExponential:
      return SensitivityLambdaExp(config.decay.alpha);
    case MechanismKind::kPolynomial:
      return SensitivityLambdaPoly(config.decay.c, config.decay.beta);
    default:
      return std::nullopt;
  }
}

std::optional<double> MechanismCounterScale(const MechanismConfig& config,
                                            int64_t j) {
  const auto profile = MechanismNoiseProfile(config, j);
  if (!profile) return std::nullopt;
  return profile->max_scale();
}

std::optional<NoiseProfile> MechanismNoiseProfile(
    const MechanismConfig& config, int64_t j) {
  config.Validate();
  j = std::max<int64_t>(j, 1);
  switch (config.kind) {
    case MechanismKind::kWindow:
      return WindowNoiseProfile(config.decay.window, config.epsilon);
    case MechanismKind::kAllWindow:
      return AllWindowNoiseProfile(config.decay.window, j, config.epsilon,
                                   config.level_beta);
    case MechanismKind::kExponential:
      return ExponentialNoiseProfile(config.decay.alpha, j, config.epsilon);
    case MechanismKind::kPolynomial:
      return PolynomialNoiseProfile(config.decay.c, config.decay.beta, j,
                                    config.epsilon);
    case MechanismKind::kRunning:
      return RunningNoiseProfile(j, config.epsilon, config.level_beta);
    default:
      return std::nullopt;
  }
}

double MechanismNoiseDelta(const MechanismConfig& config, int64_t j,
                           double gamma) {
  if (config.noise == NoiseMode::kDisabled) return 0.0;
  if (config.kind == MechanismKind::kOracle) return 0.0;
  if (config.kind == MechanismKind::kRandomizedResponse) {
    return RandomizedResponseDelta(config.decay, config.ResolvedFlip(), j,
                                   gamma);
  }
  return UtilityDelta(*MechanismNoiseProfile(config, j), gamma);
}

}  // namespace dpdecay
