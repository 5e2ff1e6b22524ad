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

#ifndef DPDECAY_HARNESS_H_
#define DPDECAY_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dpdecay/factory.h"
#include "dpdecay/stream_io.h"
#include "json.hpp"

namespace dpdecay {

struct StreamSource {
  enum class Kind { kBernoulli, kOnes, kBlocks, kFile };

  Kind kind = Kind::kBernoulli;
  double p = 0.5;         // bernoulli
  int64_t block = 0;      // blocks: alternating runs of ones and zeros
  std::string path;       // file ("-" is stdin)
};

struct ExperimentConfig {
  MechanismConfig mechanism;
  double gamma = 0.05;
  int64_t trials = 100;
  StreamSource source;
  int64_t length = 4096;  // T
  uint64_t seed = 1;
  OutputFormat format = OutputFormat::kCsv;
  int threads = 1;

  void Validate() const;
};

nlohmann::json ToJson(const ExperimentConfig& config);
ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& j);

// Materializes the configured stream. Generated streams depend only on the
// seed; file streams are truncated to `length` when it is positive.
std::vector<double> GenerateStream(const ExperimentConfig& config);

// Powers of two up to and including T's largest power of two.
std::vector<int64_t> PowerOfTwoCheckpoints(int64_t length);

// Nearest-rank quantile: the ceil(p n)-th smallest value.
double NearestRankQuantile(std::vector<double> values, double p);

struct SummaryRow {
  std::string estimator;
  int64_t j = 0;
  double mean_err = 0.0;
  double sd_err = 0.0;
  double q_abs_err = 0.0;
  double theory_delta = 0.0;
  double lb_reference = 0.0;
};

struct BenchResult {
  std::vector<SummaryRow> rows;
  std::vector<std::string> notes;

  // Row for estimator at checkpoint j; throws RangeError if absent.
  const SummaryRow& At(const std::string& estimator, int64_t j) const;
};

// Runs config.trials independent trials over one fixed stream and reports
// per-checkpoint error statistics for the mechanism and its baselines.
// Results do not depend on config.threads.
BenchResult RunBench(const ExperimentConfig& config);

void WriteBench(std::ostream& out, const BenchResult& result,
                OutputFormat format);

struct BoundReport {
  std::vector<std::pair<std::string, std::string>> fields;
};

// Theory table for the configured mechanism at horizon T.
BoundReport ComputeBound(const ExperimentConfig& config);

void WriteBound(std::ostream& out, const BoundReport& report,
                OutputFormat format);

}  // namespace dpdecay

#endif  // DPDECAY_HARNESS_H_
