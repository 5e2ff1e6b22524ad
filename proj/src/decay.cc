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

#include "dpdecay/decay.h"

#include <cmath>
#include <sstream>

#include "dpdecay/errors.h"

namespace dpdecay {

DecaySpec DecaySpec::Window(int64_t window) {
  DecaySpec d;
  d.kind = Kind::kWindow;
  d.window = window;
  d.Validate();
  return d;
}

DecaySpec DecaySpec::Exponential(double alpha) {
  DecaySpec d;
  d.kind = Kind::kExponential;
  d.alpha = alpha;
  d.Validate();
  return d;
}

DecaySpec DecaySpec::Polynomial(double c, double beta) {
  DecaySpec d;
  d.kind = Kind::kPolynomial;
  d.c = c;
  d.beta = beta;
  d.Validate();
  return d;
}

DecaySpec DecaySpec::Running() { return DecaySpec{}; }

void DecaySpec::Validate() const {
  switch (kind) {
    case Kind::kWindow:
      if (window < 1) throw ParameterError("window W must be >= 1");
      break;
    case Kind::kExponential:
      if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ParameterError("exponential decay needs 0 < alpha < 1");
      }
      break;
    case Kind::kPolynomial:
      if (!(c > 1.0)) throw ParameterError("polynomial decay needs c > 1");
      if (!(beta > 0.0 && beta < 1.0)) {
        throw ParameterError("polynomial decay needs 0 < beta < 1");
      }
      break;
    case Kind::kRunning:
      break;
  }
}

double DecaySpec::Weight(int64_t age) const {
  if (age < 0) return 0.0;
  switch (kind) {
    case Kind::kWindow:
      return age < window ? 1.0 : 0.0;
    case Kind::kExponential:
      return std::pow(alpha, static_cast<double>(age));
    case Kind::kPolynomial:
      return std::pow(static_cast<double>(age + 1), -c);
    case Kind::kRunning:
      return 1.0;
  }
  return 0.0;
}

std::string DecaySpec::ToString() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kWindow:
      out << "window(W=" << window << ")";
      break;
    case Kind::kExponential:
      out << "exponential(alpha=" << alpha << ")";
      break;
    case Kind::kPolynomial:
      out << "polynomial(c=" << c << ",beta=" << beta << ")";
      break;
    case Kind::kRunning:
      out << "running";
      break;
  }
  return out.str();
}

double GeneralizedHarmonic(double c, int64_t m) {
  double sum = 0.0;
  for (int64_t k = m; k >= 1; --k) {
    sum += std::pow(static_cast<double>(k), -c);
  }
  return sum;
}

}  // namespace dpdecay
