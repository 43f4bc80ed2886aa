// Copyright 2026 The BRFP Authors.
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

#ifndef BRFP_ERROR_H_
#define BRFP_ERROR_H_

#include <stdexcept>
#include <string>

namespace brfp {

// Bad arguments, dimension mismatches, malformed files.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// CSV/config syntax errors. Carries the 1-based line number when known.
class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& what, long line)
      : InvalidInput(line > 0 ? what + " (line " + std::to_string(line) + ")"
                              : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Requested problem does not fit the dense-matrix budget.
class ResourceError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Factorization failure, non-finite likelihood, and similar.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TrainingError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace brfp

#endif  // BRFP_ERROR_H_
