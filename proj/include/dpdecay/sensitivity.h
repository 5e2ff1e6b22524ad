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

// Closed-form L1 sensitivities of the counter vectors kept by the tree
// mechanisms. "log" here is base 2 (it counts dyadic levels); "ln" is
// natural.

#ifndef DPDECAY_SENSITIVITY_H_
#define DPDECAY_SENSITIVITY_H_

#include <cstdint>

namespace dpdecay {

// log2(W) + 1: counters touched per update in a block tree of W leaves.
// W must be a power of two.
double WindowSensitivity(int64_t window);

// (1 / (alpha ln 2)) * (ln(2 alpha / (1 - alpha)) + 1/2 + ln 2), for
// alpha in (2/3, 1). Throws DomainError otherwise.
double SensitivityLambdaExp(double alpha);

// log2(1 / (1 - beta)) / (c beta^2) + 1 / beta, for c > 1 and beta in (0, 1).
double SensitivityLambdaPoly(double c, double beta);

}  // namespace dpdecay

#endif  // DPDECAY_SENSITIVITY_H_
