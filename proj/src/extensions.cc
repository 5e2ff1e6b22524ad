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

#include "dpdecay/extensions.h"

#include <cmath>
#include <string>
#include <utility>

#include "dpdecay/all_window_sum.h"
#include "dpdecay/errors.h"

namespace dpdecay {

PredicateStream::PredicateStream(Predicate predicate,
                                 std::unique_ptr<DecayedSumEstimator> estimator)
    : predicate_(std::move(predicate)), estimator_(std::move(estimator)) {
  if (!predicate_ || !estimator_) {
    throw ParameterError("predicate stream needs a predicate and estimator");
  }
}

double PredicateStream::Push(std::string_view element) {
  const double v = predicate_(element);
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ContractViolation("predicate returned " + std::to_string(v) +
                            ", outside [0, 1]");
  }
  return estimator_->Push(v);
}

HolisticPredicateSum::HolisticPredicateSum(int k, double epsilon,
                                           Holistic predicate,
                                           const EstimatorFactory& factory)
    : k_(k),
      epsilon_(epsilon),
      inner_epsilon_(epsilon / k),
      predicate_(std::move(predicate)) {
  if (k < 1) throw ParameterError("k must be at least 1");
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
  if (std::abs(inner_epsilon_ * k_ - epsilon_) > 1e-12 * epsilon_) {
    throw ContractViolation("inner budget does not compose to epsilon");
  }
  estimator_ = factory(inner_epsilon_);
  if (!estimator_) throw ParameterError("factory returned no estimator");
}

double HolisticPredicateSum::Push(std::string_view element) {
  const double v = predicate_(element);
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ContractViolation("predicate returned " + std::to_string(v) +
                            ", outside [0, 1]");
  }
  return estimator_->Push(v);
}

std::vector<double> FirstOccurrenceIndicators(
    const std::vector<std::string>& elements) {
  std::unordered_set<std::string> seen;
  std::vector<double> out;
  out.reserve(elements.size());
  for (const auto& e : elements) {
    out.push_back(seen.insert(e).second ? 1.0 : 0.0);
  }
  return out;
}

DistinctCount::DistinctCount(double epsilon, double level_beta,
                             RandomSource rng, MechanismOptions options)
    : seen_(std::make_shared<std::unordered_set<std::string>>()),
      sum_(
          2, epsilon,
          [seen = seen_](std::string_view u) {
            return seen->emplace(u).second ? 1.0 : 0.0;
          },
          [&](double inner) -> std::unique_ptr<DecayedSumEstimator> {
            return std::make_unique<RunningSum>(inner, level_beta, rng,
                                                options);
          }) {}

double DistinctCount::Push(std::string_view element) {
  return sum_.Push(element);
}

Histogram::Histogram(KeyedFactory factory, RandomSource rng)
    : factory_(std::move(factory)), rng_(rng) {
  if (!factory_) throw ParameterError("histogram needs a factory");
}

uint64_t Histogram::KeyHash(std::string_view key) {
  // FNV-1a, 64-bit.
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : key) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double Histogram::Push(std::string_view key, double x) {
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    Entry entry;
    entry.estimator = factory_(rng_.Child(KeyHash(key)));
    it = entries_.emplace(std::string(key), std::move(entry)).first;
  }
  Entry& e = it->second;
  e.estimate = e.estimator->Push(x);
  ++e.updates;
  return e.estimate;
}

double Histogram::Estimate(std::string_view key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0.0 : it->second.estimate;
}

int64_t Histogram::Updates(std::string_view key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? 0 : it->second.updates;
}

std::vector<std::string> Histogram::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [key, entry] : entries_) out.push_back(key);
  return out;
}

}  // namespace dpdecay
