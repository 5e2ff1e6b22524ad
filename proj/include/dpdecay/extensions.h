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

#ifndef DPDECAY_EXTENSIONS_H_
#define DPDECAY_EXTENSIONS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "dpdecay/estimator.h"
#include "dpdecay/random.h"

namespace dpdecay {

// Maps one universe element to a value in [0, 1].
using Predicate = std::function<double(std::string_view)>;

// Builds a fresh estimator running at the given privacy parameter.
using EstimatorFactory =
    std::function<std::unique_ptr<DecayedSumEstimator>(double epsilon)>;

// Feeds P(u_1), P(u_2), ... to a decayed-sum estimator.
class PredicateStream {
 public:
  PredicateStream(Predicate predicate,
                  std::unique_ptr<DecayedSumEstimator> estimator);

  // Throws ContractViolation if the predicate leaves [0, 1].
  double Push(std::string_view element);

  const DecayedSumEstimator& estimator() const { return *estimator_; }

 private:
  Predicate predicate_;
  std::unique_ptr<DecayedSumEstimator> estimator_;
};

// A predicate over the whole prefix u_1..u_j that changes in at most k
// positions when one update is substituted. The inner estimator runs at
// epsilon / k so the composite is epsilon-private.
class HolisticPredicateSum {
 public:
  using Holistic = std::function<double(std::string_view)>;

  HolisticPredicateSum(int k, double epsilon, Holistic predicate,
                       const EstimatorFactory& factory);

  double Push(std::string_view element);

  int k() const { return k_; }
  double epsilon() const { return epsilon_; }
  double inner_epsilon() const { return inner_epsilon_; }
  const DecayedSumEstimator& estimator() const { return *estimator_; }

 private:
  int k_;
  double epsilon_;
  double inner_epsilon_;
  Holistic predicate_;
  std::unique_ptr<DecayedSumEstimator> estimator_;
};

// 1 exactly at the first occurrence of each element.
std::vector<double> FirstOccurrenceIndicators(
    const std::vector<std::string>& elements);

// Private count of distinct elements seen so far: the first-occurrence
// predicate is 2-sensitive, so a running sum at epsilon / 2 is used.
class DistinctCount {
 public:
  DistinctCount(double epsilon, double level_beta, RandomSource rng,
                MechanismOptions options = {});

  double Push(std::string_view element);

  double epsilon() const { return sum_.epsilon(); }
  double inner_epsilon() const { return sum_.inner_epsilon(); }
  size_t exact_distinct() const { return seen_->size(); }

 private:
  std::shared_ptr<std::unordered_set<std::string>> seen_;
  HolisticPredicateSum sum_;
};

// One estimator per key, seeded from the key. Keys are treated as public;
// each update reaches exactly one key's estimator.
class Histogram {
 public:
  using KeyedFactory =
      std::function<std::unique_ptr<DecayedSumEstimator>(RandomSource rng)>;

  Histogram(KeyedFactory factory, RandomSource rng);

  // Returns the key's fresh estimate.
  double Push(std::string_view key, double x);

  // Latest estimate for the key; 0 for an unseen key.
  double Estimate(std::string_view key) const;
  // Number of updates routed to the key.
  int64_t Updates(std::string_view key) const;
  size_t size() const { return entries_.size(); }
  std::vector<std::string> keys() const;

  static uint64_t KeyHash(std::string_view key);

 private:
  struct Entry {
    std::unique_ptr<DecayedSumEstimator> estimator;
    double estimate = 0.0;
    int64_t updates = 0;
  };

  KeyedFactory factory_;
  RandomSource rng_;
  std::map<std::string, Entry, std::less<>> entries_;
};

}  // namespace dpdecay

#endif  // DPDECAY_EXTENSIONS_H_
