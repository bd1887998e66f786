// Copyright 2026 The odsim Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace odsim {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed Hamiltonian text. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string &message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A configured work or memory budget would be exceeded.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Inputs to the naive divided-difference formula are (numerically) repeated.
class RepeatedInputs : public Error {
 public:
  using Error::Error;
};

/// The divided difference is exactly zero, so its logarithm is undefined.
class ZeroDividedDifference : public Error {
 public:
  using Error::Error;
};

/// An iterative evaluation failed to converge.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace odsim
