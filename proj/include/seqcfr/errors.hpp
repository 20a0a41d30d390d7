// Copyright 2026 The seqcfr Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace seqcfr {

// Malformed input text (game files, strategy files). Carries the 1-based line
// and the byte offset within that line where parsing failed.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int position)
      : std::runtime_error("line " + std::to_string(line) + ", position " +
                           std::to_string(position) + ": " + what),
        line_(line),
        position_(position) {}

  int line() const { return line_; }
  int position() const { return position_; }

 private:
  int line_;
  int position_;
};

// A structurally well-formed game that breaks a game invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A game or output file that cannot be opened.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Vector/matrix shape mismatch at a kernel or solver boundary.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// NaN or infinity crossing an API boundary.
class NonFiniteError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace seqcfr
