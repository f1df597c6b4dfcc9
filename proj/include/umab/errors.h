// Copyright 2026 The UMAB Authors. All rights reserved.
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

#ifndef UMAB_ERRORS_H_
#define UMAB_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace umab {

// Argument outside the mathematical domain of an operation (p_k <= 0, c <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke a documented precondition (negative loss fed to UMAB-NN,
// EXP3 loss outside its declared bound, mismatched arm counts).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Iterative solver failed to converge; what() carries the diagnostic payload.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Row and column are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, std::size_t row, std::size_t column,
             const std::string& message)
      : std::runtime_error(Format(source, row, column, message)),
        row_(row),
        column_(column) {}

  std::size_t row() const { return row_; }
  std::size_t column() const { return column_; }

 private:
  static std::string Format(const std::string& source, std::size_t row,
                            std::size_t column, const std::string& message) {
    std::string out = source;
    if (row > 0) out += ":row " + std::to_string(row);
    if (column > 0) out += ":column " + std::to_string(column);
    return out + ": " + message;
  }

  std::size_t row_;
  std::size_t column_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A runtime invariant check failed while strict mode was on.
class AssertionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace umab

#endif  // UMAB_ERRORS_H_
