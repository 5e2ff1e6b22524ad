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

#include "dpdecay/lower_bound.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "dpdecay/baselines.h"
#include "dpdecay/errors.h"
#include "dpdecay/random.h"

namespace dpdecay {

LowerBoundFamily BuildLowerBoundFamily(int64_t q, int64_t d) {
  if (q < 1) throw ParameterError("q must be at least 1");
  if (d < 1) throw ParameterError("D must be at least 1");
  LowerBoundFamily family;
  family.q = q;
  family.d = d;
  const size_t length = static_cast<size_t>(d * q);
  family.instances.assign(static_cast<size_t>(q + 1),
                          std::vector<uint8_t>(length, 0));
  for (int64_t a = 1; a <= q; ++a) {
    auto& x = family.instances[static_cast<size_t>(a)];
    std::fill(x.begin() + (a - 1) * d, x.begin() + a * d, uint8_t{1});
  }
  for (int64_t j = d; j <= d * q; j += d) family.queries.push_back(j);
  return family;
}

int64_t HammingDistance(const std::vector<uint8_t>& a,
                        const std::vector<uint8_t>& b) {
  if (a.size() != b.size()) {
    throw ParameterError("Hamming distance needs equal lengths");
  }
  int64_t n = 0;
  for (size_t i = 0; i < a.size(); ++i) n += a[i] != b[i];
  return n;
}

IndependenceReport CheckIndependence(const LowerBoundFamily& family,
                                     const DecaySpec& decay, double delta) {
  IndependenceReport report;
  report.delta = delta;

  // F^a at every query step.
  std::vector<std::vector<double>> values;
  values.reserve(family.instances.size());
  for (const auto& x : family.instances) {
    ExactOracle oracle(decay);
    std::vector<double> at_queries;
    size_t next = 0;
    for (size_t i = 0; i < x.size(); ++i) {
      const double f = oracle.Push(x[i]);
      if (next < family.queries.size() &&
          family.queries[next] == static_cast<int64_t>(i + 1)) {
        at_queries.push_back(f);
        ++next;
      }
    }
    values.push_back(std::move(at_queries));
  }

  for (size_t a = 0; a < values.size(); ++a) {
    for (size_t b = a + 1; b < values.size(); ++b) {
      PairWitness w{static_cast<int64_t>(a), static_cast<int64_t>(b)};
      for (size_t k = 0; k < family.queries.size(); ++k) {
        const double gap = std::abs(values[a][k] - values[b][k]);
        if (gap > 2.0 * delta) {
          w.separated = true;
          w.j = family.queries[k];
          w.gap = gap;
          break;
        }
        if (gap > w.gap || w.j == 0) {
          w.gap = gap;
          w.j = family.queries[k];
        }
      }
      report.passed = report.passed && w.separated;
      report.pairs.push_back(w);
    }
  }
  return report;
}

ClosenessReport CheckCloseness(const LowerBoundFamily& family, int64_t d) {
  ClosenessReport report;
  const auto& zero = family.instances.front();
  for (size_t a = 1; a < family.instances.size(); ++a) {
    report.max_to_zero = std::max(
        report.max_to_zero, HammingDistance(zero, family.instances[a]));
  }
  for (size_t a = 0; a < family.instances.size(); ++a) {
    for (size_t b = a + 1; b < family.instances.size(); ++b) {
      report.all_pairs_max =
          std::max(report.all_pairs_max,
                   HammingDistance(family.instances[a], family.instances[b]));
    }
  }
  report.passed = report.max_to_zero <= d;
  return report;
}

double FrameworkThreshold(int64_t n, double epsilon) {
  if (n < 1) throw DomainError("N must be at least 1");
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  return (std::log(static_cast<double>(n)) + std::log(2.0)) / epsilon;
}

double ReferenceDelta(const DecaySpec& decay, double gamma, double epsilon) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("gamma must be in (0, 1)");
  }
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  decay.Validate();
  const double raw = std::floor(std::log(1.0 / gamma) / epsilon);
  const int64_t m =
      std::max<int64_t>(1, static_cast<int64_t>(std::min(raw, 9.0e15)));
  switch (decay.kind) {
    case DecaySpec::Kind::kWindow:
      return 0.5 * static_cast<double>(std::min(decay.window, m));
    case DecaySpec::Kind::kExponential:
      return (1.0 - std::pow(decay.alpha, static_cast<double>(m))) /
             (2.0 * (1.0 - decay.alpha));
    case DecaySpec::Kind::kPolynomial: {
      if (m <= 10'000'000) return 0.5 * GeneralizedHarmonic(decay.c, m);
      // Euler-Maclaurin tail of zeta(c) beyond m.
      const double md = static_cast<double>(m);
      return 0.5 * (RiemannZeta(decay.c) -
                    std::pow(md, 1.0 - decay.c) / (decay.c - 1.0) +
                    0.5 * std::pow(md, -decay.c));
    }
    case DecaySpec::Kind::kRunning:
      return 0.5 * static_cast<double>(m);
  }
  return 0.0;
}

}  // namespace dpdecay
