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

#ifndef DPDECAY_ERRORS_H_
#define DPDECAY_ERRORS_H_

#include <stdexcept>
#include <string>

namespace dpdecay {

// Invalid construction or call parameter (bad epsilon, non-power-of-two
// window, malformed interval, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Index or value outside the admissible range (update not in [0, 1], query
// step beyond the stream, leaf outside the tree).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Operation invoked in a state where it is not defined.
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Parameter outside the mathematical domain of a formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A user-supplied callback broke its documented contract.
class ContractViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data (CLI streams, records).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dpdecay

#endif  // DPDECAY_ERRORS_H_
