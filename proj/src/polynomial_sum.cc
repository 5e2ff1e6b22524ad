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

#include "dpdecay/polynomial_sum.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "dpdecay/errors.h"
#include "dpdecay/sensitivity.h"

namespace dpdecay {
namespace {

constexpr int64_t kBreakpointCap = int64_t{1} << 62;

double CheckedLambda(double c, double beta, double epsilon) {
  if (!(c > 1.0)) throw ParameterError("PolynomialSum needs c > 1");
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ParameterError("PolynomialSum needs beta in (0, 1)");
  }
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  return std::max(SensitivityLambdaPoly(c, beta),
                  PolynomialSum::StructuralSensitivity(c, beta));
}

double Power(double base, int64_t n) {
  const double w = std::pow(base, static_cast<double>(n));
  return w < 1e-300 ? 0.0 : w;
}

// Counters touched per update by a block-aligned window of this width.
double TouchesPerUpdate(int64_t width) {
  return static_cast<double>(
      std::bit_width(std::bit_ceil(static_cast<uint64_t>(width))));
}

}  // namespace

int64_t PolynomialSum::Breakpoint(double c, double beta, int64_t j) {
  if (j <= 0) return 0;
  const double target = std::pow(1.0 - beta, static_cast<double>(j));
  const double estimate = std::pow(1.0 - beta, -static_cast<double>(j) / c);
  if (!(estimate < static_cast<double>(kBreakpointCap))) {
    return kBreakpointCap;
  }
  // b(j) = max{i : (i + 1)^-c >= (1 - beta)^j}; start from the closed form
  // and repair floating-point rounding at exact boundaries.
  auto admissible = [&](int64_t i) {
    return std::pow(static_cast<double>(i + 1), -c) >= target;
  };
  int64_t i = std::max<int64_t>(0, static_cast<int64_t>(estimate) - 1);
  while (i > 0 && !admissible(i)) --i;
  while (admissible(i + 1)) ++i;
  return i;
}

std::vector<PolynomialSum::Segment> PolynomialSum::Segments(
    double c, double beta, int64_t max_lag) {
  std::vector<Segment> out;
  if (max_lag <= 0) return out;
  out.push_back(Segment{0, 0, 1, 1.0});
  int64_t prev = 0;
  for (int64_t j = 1; prev + 1 < max_lag && prev < kBreakpointCap; ++j) {
    const int64_t b = Breakpoint(c, beta, j);
    if (b > prev) {
      out.push_back(Segment{j, prev + 1, b - prev, Power(1.0 - beta, j)});
    }
    prev = b;
  }
  return out;
}

double PolynomialSum::StructuralSensitivity(double c, double beta) {
  double total = 1.0;  // lag-0 segment: one counter, weight 1
  int64_t prev = 0;
  for (int64_t j = 1; j < 100000; ++j) {
    const double w = Power(1.0 - beta, j);
    if (w * 64.0 < 1e-17) break;
    const int64_t b = Breakpoint(c, beta, j);
    if (b > prev) total += w * TouchesPerUpdate(b - prev);
    prev = b;
  }
  return total;
}

PolynomialSum::PolynomialSum(double c, double beta, double epsilon,
                             RandomSource rng, MechanismOptions options)
    : c_(c),
      beta_(beta),
      lambda_(CheckedLambda(c, beta, epsilon)),
      scale_(lambda_ / epsilon),
      rng_(rng),
      options_(options) {}

void PolynomialSum::SpawnDueChildren() {
  // The lag-0 segment starts at step 1; segment j starts once step exceeds
  // its first lag.
  while (true) {
    Segment seg;
    if (next_segment_ == 0) {
      seg = Segment{0, 0, 1, 1.0};
    } else {
      const int64_t prev = Breakpoint(c_, beta_, next_segment_ - 1);
      const int64_t b = Breakpoint(c_, beta_, next_segment_);
      seg = Segment{next_segment_, prev + 1, b - prev,
                    Power(1.0 - beta_, next_segment_)};
    }
    if (seg.lag_begin >= step_) return;
    ++next_segment_;
    if (seg.width <= 0) continue;
    children_.push_back(Child{
        seg,
        WindowSum::WithBlockAlignment(
            seg.width, scale_,
            rng_.Child(static_cast<uint64_t>(seg.index)), options_),
        0.0});
  }
}

double PolynomialSum::Push(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw RangeError("update " + std::to_string(x) + " outside [0, 1]");
  }
  history_.push_back(x);
  ++step_;
  SpawnDueChildren();

  last_reads_.clear();
  double estimate = 0.0;
  for (Child& child : children_) {
    // Child input at this step is the scaled update that is lag_begin steps
    // old: x_{step - lag_begin}.
    const double lagged =
        history_[static_cast<size_t>(step_ - child.segment.lag_begin - 1)];
    child.last = child.window.Push(child.segment.weight * lagged);
    estimate += child.last;
    if (options_.trace_reads) {
      for (const CounterId& id : child.window.last_reads()) {
        last_reads_.push_back(
            CounterId{child.segment.index * (int64_t{1} << 32) + id.instance,
                      id.interval});
      }
    }
  }
  return estimate;
}

void PolynomialSum::VisitCounters(const CounterVisitor& visit) const {
  for (const Child& child : children_) {
    child.window.VisitCounters([&](const CounterId& id, const TreeNode& n) {
      visit(CounterId{child.segment.index * (int64_t{1} << 32) + id.instance,
                      id.interval},
            n);
    });
  }
}

size_t PolynomialSum::live_counters() const {
  size_t n = 0;
  for (const Child& child : children_) n += child.window.live_counters();
  return n;
}

}  // namespace dpdecay
