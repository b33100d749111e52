// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AIRCOMP_ERRORS_HPP_
#define AIRCOMP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace aircomp {

// Value outside the representable lattice or codeword range.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A caller broke a documented precondition (bad beamformer norm, varpi < 1,
// empty active set, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Configuration text could not be parsed or validated. The message carries
// the offending line number when one is known.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace aircomp

#endif  // AIRCOMP_ERRORS_HPP_
