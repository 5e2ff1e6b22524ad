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

#include "dpdecay/stream_io.h"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "dpdecay/errors.h"
#include "json.hpp"

namespace dpdecay {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ParseNumber(std::string_view text, int64_t line) {
  text = Trim(text);
  double v = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw DataError("line " + std::to_string(line) + ": cannot parse '" +
                    std::string(text) + "' as a number");
  }
  return v;
}

double ParseUnitValue(std::string_view text, int64_t line) {
  const double v = ParseNumber(text, line);
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DataError("line " + std::to_string(line) + ": value " +
                    std::string(Trim(text)) + " outside [0, 1]");
  }
  return v;
}

bool Skippable(std::string_view line) {
  line = Trim(line);
  return line.empty() || line.front() == '#';
}

std::vector<std::string_view> SplitCommas(std::string_view s) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t comma = s.find(',', start);
    out.push_back(s.substr(start, comma - start));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

}  // namespace

OutputFormat ParseOutputFormat(std::string_view name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "ndjson") return OutputFormat::kNdjson;
  throw ParameterError("unknown format '" + std::string(name) + "'");
}

std::vector<double> ParseValues(std::istream& in) {
  std::vector<double> out;
  std::string line;
  int64_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (Skippable(line)) continue;
    out.push_back(ParseUnitValue(line, n));
  }
  return out;
}

std::vector<KeyedValue> ParseKeyedValues(std::istream& in) {
  std::vector<KeyedValue> out;
  std::string line;
  int64_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (Skippable(line)) continue;
    const std::string_view view(line);
    const size_t comma = view.rfind(',');
    if (comma == std::string_view::npos) {
      throw DataError("line " + std::to_string(n) +
                      ": expected 'key,value'");
    }
    out.push_back(KeyedValue{std::string(Trim(view.substr(0, comma))),
                             ParseUnitValue(view.substr(comma + 1), n)});
  }
  return out;
}

double RunRecord::abs_error() const {
  return exact ? std::abs(estimate - *exact) : 0.0;
}

std::string FormatDouble(double v) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

RecordWriter::RecordWriter(std::ostream& out, OutputFormat format, bool keyed,
                           bool with_exact)
    : out_(out), format_(format), keyed_(keyed), with_exact_(with_exact) {}

void RecordWriter::Write(const RunRecord& r) {
  if (format_ == OutputFormat::kNdjson) {
    // Hand-rolled so numbers match the CSV rendering.
    out_ << "{\"t\":" << r.t;
    if (keyed_) {
      out_ << ",\"key\":" << nlohmann::json(r.key.value_or("")).dump();
    }
    out_ << ",\"estimate\":" << FormatDouble(r.estimate);
    if (with_exact_) {
      out_ << ",\"exact\":" << FormatDouble(r.exact.value_or(0.0))
           << ",\"abs_error\":" << FormatDouble(r.abs_error());
    }
    out_ << "}\n";
    return;
  }
  if (!header_written_) {
    out_ << "t" << (keyed_ ? ",key" : "") << ",estimate"
         << (with_exact_ ? ",exact,abs_error" : "") << "\n";
    header_written_ = true;
  }
  out_ << r.t;
  if (keyed_) out_ << "," << r.key.value_or("");
  out_ << "," << FormatDouble(r.estimate);
  if (with_exact_) {
    out_ << "," << FormatDouble(r.exact.value_or(0.0)) << ","
         << FormatDouble(r.abs_error());
  }
  out_ << "\n";
}

std::vector<RunRecord> ParseRecords(std::istream& in, OutputFormat format) {
  std::vector<RunRecord> out;
  std::string line;
  int64_t n = 0;
  if (format == OutputFormat::kNdjson) {
    while (std::getline(in, line)) {
      ++n;
      if (Skippable(line)) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw DataError("line " + std::to_string(n) + ": " + e.what());
      }
      RunRecord r;
      r.t = j.at("t").get<int64_t>();
      if (j.contains("key")) r.key = j["key"].get<std::string>();
      r.estimate = j.at("estimate").get<double>();
      if (j.contains("exact")) r.exact = j["exact"].get<double>();
      out.push_back(std::move(r));
    }
    return out;
  }

  std::vector<std::string> columns;
  while (std::getline(in, line)) {
    ++n;
    if (Skippable(line)) continue;
    const auto fields = SplitCommas(Trim(line));
    if (columns.empty()) {
      for (auto f : fields) columns.emplace_back(Trim(f));
      continue;
    }
    if (fields.size() != columns.size()) {
      throw DataError("line " + std::to_string(n) + ": expected " +
                      std::to_string(columns.size()) + " fields");
    }
    RunRecord r;
    for (size_t i = 0; i < columns.size(); ++i) {
      const std::string& c = columns[i];
      if (c == "t") {
        r.t = static_cast<int64_t>(ParseNumber(fields[i], n));
      } else if (c == "key") {
        r.key = std::string(fields[i]);
      } else if (c == "estimate") {
        r.estimate = ParseNumber(fields[i], n);
      } else if (c == "exact") {
        r.exact = ParseNumber(fields[i], n);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace dpdecay
