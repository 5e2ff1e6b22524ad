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

#include "dpdecay/harness.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "dpdecay/errors.h"
#include "dpdecay/stream_io.h"
#include "gtest/gtest.h"

namespace dpdecay {
namespace {

std::vector<RunRecord> SampleRecords(bool keyed, bool with_exact) {
  std::vector<RunRecord> out;
  for (int t = 1; t <= 5; ++t) {
    RunRecord r;
    r.t = t;
    if (keyed) r.key = "key," + std::to_string(t);
    r.estimate = 0.1 * t - 1.0 / 3.0;
    if (with_exact) r.exact = std::sqrt(static_cast<double>(t));
    out.push_back(r);
  }
  return out;
}

TEST(RecordIoTest, RoundTrip) {
  for (OutputFormat format : {OutputFormat::kCsv, OutputFormat::kNdjson}) {
    for (bool keyed : {false, true}) {
      if (keyed && format == OutputFormat::kCsv) continue;
      for (bool with_exact : {false, true}) {
        const auto records = SampleRecords(keyed, with_exact);
        std::stringstream ss;
        RecordWriter w(ss, format, keyed, with_exact);
        for (const auto& r : records) w.Write(r);
        EXPECT_EQ(ParseRecords(ss, format), records);
      }
    }
  }
}

TEST(RecordIoTest, CsvHeader) {
  std::stringstream ss;
  RecordWriter w(ss, OutputFormat::kCsv, false, true);
  w.Write(RunRecord{1, std::nullopt, 0.5, 1.0});
  std::string header;
  std::getline(ss, header);
  EXPECT_EQ(header, "t,estimate,exact,abs_error");
}

TEST(ParseValuesTest, SkipsCommentsAndReportsLines) {
  std::istringstream ok("# header\n0\n\n1\n0.25\n");
  EXPECT_EQ(ParseValues(ok), (std::vector<double>{0, 1, 0.25}));
  std::istringstream bad("0\nfoo\n");
  try {
    ParseValues(bad);
    FAIL();
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream range("0\n1\n1.5\n");
  EXPECT_THROW(ParseValues(range), DataError);
}

TEST(ParseKeyedValuesTest, SplitsAtLastComma) {
  std::istringstream in("a,b,1\nc,0\n");
  const auto kv = ParseKeyedValues(in);
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[0].key, "a,b");
  EXPECT_EQ(kv[0].value, 1.0);
}

TEST(QuantileTest, NearestRank) {
  EXPECT_EQ(NearestRankQuantile({5, 1, 3, 2, 4}, 0.95), 5.0);
  EXPECT_EQ(NearestRankQuantile({5, 1, 3, 2, 4}, 0.4), 2.0);
  EXPECT_EQ(NearestRankQuantile({5, 1, 3, 2, 4}, 0.41), 3.0);
}

TEST(CheckpointTest, PowersOfTwo) {
  EXPECT_EQ(PowerOfTwoCheckpoints(20),
            (std::vector<int64_t>{1, 2, 4, 8, 16}));
  EXPECT_EQ(PowerOfTwoCheckpoints(16), (std::vector<int64_t>{1, 2, 4, 8, 16}));
}

ExperimentConfig SmallConfig() {
  ExperimentConfig c;
  c.mechanism.kind = MechanismKind::kWindow;
  c.mechanism.decay = DecaySpec::Window(16);
  c.mechanism.epsilon = 0.5;
  c.trials = 40;
  c.length = 256;
  c.seed = 11;
  return c;
}

TEST(ConfigTest, JsonRoundTrip) {
  ExperimentConfig c = SmallConfig();
  c.mechanism.kind = MechanismKind::kPolynomial;
  c.mechanism.decay = DecaySpec::Polynomial(2.0, 0.25);
  c.format = OutputFormat::kNdjson;
  c.threads = 3;
  const auto back = ExperimentConfigFromJson(ToJson(c));
  EXPECT_EQ(ToJson(back), ToJson(c));
  EXPECT_EQ(back.threads, 3);
}

TEST(BenchTest, DeterministicAcrossThreads) {
  ExperimentConfig c = SmallConfig();
  const BenchResult one = RunBench(c);
  c.threads = 3;
  const BenchResult three = RunBench(c);
  std::ostringstream a, b;
  WriteBench(a, one, OutputFormat::kCsv);
  WriteBench(b, three, OutputFormat::kCsv);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_GT(a.str().size(), 0u);
  const SummaryRow& row = one.At("window", 256);
  EXPECT_GT(row.theory_delta, row.q_abs_err);
  EXPECT_NO_THROW(one.At("rr_matched", 256));
  EXPECT_NO_THROW(one.At("strawman", 256));
  EXPECT_THROW(one.At("window", 3), RangeError);
}

TEST(BenchTest, RequiresThirtyTrials) {
  ExperimentConfig c = SmallConfig();
  c.trials = 29;
  EXPECT_THROW(RunBench(c), ParameterError);
}

TEST(BoundTest, WindowFields) {
  ExperimentConfig c = SmallConfig();
  const BoundReport r = ComputeBound(c);
  auto field = [&r](const std::string& name) {
    for (const auto& [k, v] : r.fields) {
      if (k == name) return v;
    }
    return std::string("<missing>");
  };
  EXPECT_EQ(field("sensitivity"), "5");
  EXPECT_EQ(field("noise_scale"), "10");
  EXPECT_EQ(field("counters_per_estimate"), "9");
}

}  // namespace
}  // namespace dpdecay
