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

#include "dpdecay/baselines.h"

#include <cmath>
#include <string>

#include "dpdecay/errors.h"

namespace dpdecay {

ExactOracle::ExactOracle(DecaySpec decay) : decay_(decay) {
  decay_.Validate();
}

double ExactOracle::Push(double x) {
  ++step_;
  switch (decay_.kind) {
    case DecaySpec::Kind::kRunning:
      rolling_ += x;
      return rolling_;
    case DecaySpec::Kind::kExponential:
      rolling_ = decay_.alpha * rolling_ + x;
      return rolling_;
    case DecaySpec::Kind::kWindow:
      window_.push_back(x);
      rolling_ += x;
      if (static_cast<int64_t>(window_.size()) > decay_.window) {
        rolling_ -= window_.front();
        window_.pop_front();
      }
      // Periodic re-summation bounds the drift of the add/subtract update.
      if (step_ % (decay_.window * 64 + 1) == 0) {
        rolling_ = 0.0;
        for (double v : window_) rolling_ += v;
      }
      return rolling_;
    case DecaySpec::Kind::kPolynomial:
      history_.push_back(x);
      return DirectSum(decay_, history_);
  }
  return 0.0;
}

double ExactOracle::DirectSum(const DecaySpec& decay,
                              std::span<const double> xs) {
  const int64_t j = static_cast<int64_t>(xs.size());
  double total = 0.0;
  // Oldest first so that small terms accumulate before large ones.
  for (int64_t i = 0; i < j; ++i) {
    total += xs[static_cast<size_t>(i)] * decay.Weight(j - 1 - i);
  }
  return total;
}

RandomizedResponse::RandomizedResponse(double flip, DecaySpec decay,
                                       RandomSource rng)
    : flip_(flip), rng_(rng), inner_(decay) {
  if (!(flip > 0.0 && flip <= 1.0)) {
    throw ParameterError("randomized response flip parameter must be in (0, 1]");
  }
}

double RandomizedResponse::Push(double x) {
  if (x != 0.0 && x != 1.0) {
    throw ParameterError("randomized response needs binary updates, got " +
                         std::to_string(x));
  }
  const double p = flip_probability();
  const bool flip = rng_.UniformOpen() < p;
  const uint8_t y = static_cast<uint8_t>(flip ? 1.0 - x : x);
  bits_.push_back(y);
  return inner_.Push((static_cast<double>(y) - p) / flip_);
}

double RandomizedResponseEpsilon(double flip) {
  if (!(flip > 0.0 && flip < 1.0)) {
    throw DomainError("flip parameter must be in (0, 1)");
  }
  return std::log((1.0 + flip) / (1.0 - flip));
}

double MatchedFlipParameter(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  return std::tanh(0.5 * epsilon);
}

RunningDifferenceWindow::RunningDifferenceWindow(int64_t window,
                                                 double epsilon,
                                                 double level_beta,
                                                 RandomSource rng,
                                                 MechanismOptions options)
    : window_(window), inner_(epsilon, level_beta, rng, options) {
  if (window < 1) throw ParameterError("window must be at least 1");
}

double RunningDifferenceWindow::Push(double x) {
  inner_.Push(x);
  const int64_t j = inner_.step();
  const double head = inner_.RunningQuery(j);
  if (j <= window_) return head;
  return head - inner_.RunningQuery(j - window_);
}

}  // namespace dpdecay
