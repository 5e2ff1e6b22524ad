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

#include "dpdecay/sensitivity.h"

#include <bit>
#include <cmath>
#include <numbers>

#include "dpdecay/errors.h"

namespace dpdecay {

double WindowSensitivity(int64_t window) {
  if (window < 1 || !std::has_single_bit(static_cast<uint64_t>(window))) {
    throw ParameterError("window must be a power of two");
  }
  return static_cast<double>(std::bit_width(static_cast<uint64_t>(window)));
}

double SensitivityLambdaExp(double alpha) {
  if (!(alpha > 2.0 / 3.0 && alpha < 1.0)) {
    throw DomainError("exponential sensitivity needs alpha in (2/3, 1)");
  }
  const double ln2 = std::numbers::ln2;
  return (std::log(2.0 * alpha / (1.0 - alpha)) + 0.5 + ln2) / (alpha * ln2);
}

double SensitivityLambdaPoly(double c, double beta) {
  if (!(c > 1.0)) throw DomainError("polynomial sensitivity needs c > 1");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw DomainError("polynomial sensitivity needs beta in (0, 1)");
  }
  return std::log2(1.0 / (1.0 - beta)) / (c * beta * beta) + 1.0 / beta;
}

}  // namespace dpdecay
