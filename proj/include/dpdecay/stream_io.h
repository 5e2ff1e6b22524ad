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

#ifndef DPDECAY_STREAM_IO_H_
#define DPDECAY_STREAM_IO_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dpdecay {

enum class OutputFormat { kCsv, kNdjson };

OutputFormat ParseOutputFormat(std::string_view name);

// One value per line in [0, 1]. Blank lines and lines starting with '#' are
// skipped. Throws DataError naming the line on malformed or out-of-range
// input.
std::vector<double> ParseValues(std::istream& in);

struct KeyedValue {
  std::string key;
  double value = 0.0;
};

// "key,value" per line; the key is everything before the last comma.
std::vector<KeyedValue> ParseKeyedValues(std::istream& in);

struct RunRecord {
  int64_t t = 0;
  std::optional<std::string> key;
  double estimate = 0.0;
  std::optional<double> exact;

  double abs_error() const;
  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

// Shortest rendering that parses back to the same double.
std::string FormatDouble(double v);

class RecordWriter {
 public:
  RecordWriter(std::ostream& out, OutputFormat format, bool keyed,
               bool with_exact);

  void Write(const RunRecord& record);

 private:
  std::ostream& out_;
  OutputFormat format_;
  bool keyed_;
  bool with_exact_;
  bool header_written_ = false;
};

// Parses the output of RecordWriter back into records.
std::vector<RunRecord> ParseRecords(std::istream& in, OutputFormat format);

}  // namespace dpdecay

#endif  // DPDECAY_STREAM_IO_H_
