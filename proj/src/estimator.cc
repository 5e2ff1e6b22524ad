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

#include "dpdecay/estimator.h"

#include <cmath>

namespace dpdecay {

CounterSnapshot CounterMechanism::NoiselessCounters() const {
  CounterSnapshot out;
  VisitCounters([&](const CounterId& id, const TreeNode& node) {
    out[id] = node.c0;
  });
  return out;
}

double L1Distance(const CounterSnapshot& a, const CounterSnapshot& b) {
  double total = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      total += std::fabs(ia->second);
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      total += std::fabs(ib->second);
      ++ib;
    } else {
      total += std::fabs(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return total;
}

}  // namespace dpdecay
