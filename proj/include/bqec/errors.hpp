// Copyright 2026 The bqec Authors
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

namespace bqec {

/// Operand sizes disagree (qubit counts, row lengths).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but violates a structural requirement, e.g. a
/// generator set that does not commute.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input. Carries 1-origin line/column of the offending token.
struct ParseError : std::invalid_argument {
  ParseError(const std::string &msg, std::size_t line, std::size_t column)
      : std::invalid_argument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {
  }
  std::size_t line;
  std::size_t column;
};

/// Request exceeds what an operation supports (enumeration bounds, non-unitary gates).
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagree.
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Not enough usable data to fit a model.
struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The fitted curve has no usable crossing.
struct DegenerateFitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bqec
