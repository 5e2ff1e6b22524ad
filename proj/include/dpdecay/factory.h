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

#ifndef DPDECAY_FACTORY_H_
#define DPDECAY_FACTORY_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "dpdecay/bounds.h"
#include "dpdecay/decay.h"
#include "dpdecay/estimator.h"
#include "dpdecay/random.h"

namespace dpdecay {

enum class MechanismKind {
  kWindow,
  kAllWindow,
  kExponential,
  kPolynomial,
  kRunning,
  kRandomizedResponse,
  kOracle,
};

MechanismKind ParseMechanismKind(std::string_view name);
std::string_view MechanismName(MechanismKind kind);

struct MechanismConfig {
  MechanismKind kind = MechanismKind::kWindow;
  DecaySpec decay = DecaySpec::Window(1);
  double epsilon = 1.0;
  // Exponent of the per-level budget schedule of the growing tree.
  double level_beta = 2.0;
  NoiseMode noise = NoiseMode::kLaplace;
  // Randomized response only; defaults to the budget-matched value.
  std::optional<double> flip;

  // Throws ParameterError when the decay does not fit the mechanism.
  void Validate() const;
  double ResolvedFlip() const;
};

std::unique_ptr<DecayedSumEstimator> MakeEstimator(
    const MechanismConfig& config, RandomSource rng,
    MechanismOptions options = {});

// L1 sensitivity of the counter vector (per-level mechanisms report the
// tree height bound 1 per level); nullopt for rr and oracle.
std::optional<double> MechanismSensitivity(const MechanismConfig& config,
                                           int64_t horizon);

// Largest per-counter Laplace scale at step j.
std::optional<double> MechanismCounterScale(const MechanismConfig& config,
                                            int64_t j);

// Worst-case noise profile of the estimate at step j; nullopt for rr and
// oracle.
std::optional<NoiseProfile> MechanismNoiseProfile(
    const MechanismConfig& config, int64_t j);

// High-probability radius of the noise at step j (Laplace tail bound, or
// Hoeffding for randomized response, 0 for the oracle).
double MechanismNoiseDelta(const MechanismConfig& config, int64_t j,
                           double gamma);

}  // namespace dpdecay

#endif  // DPDECAY_FACTORY_H_
