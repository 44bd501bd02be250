// Copyright 2026 The spinlab Authors
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

namespace spinlab {

/// Bad argument to a library call (index out of range, negative time, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A result would exceed the supported Hilbert-space size (dim > 32).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Global-phase comparison against a (numerically) zero matrix.
class DegenerateComparisonError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Text input (molecule file, pulse program) could not be parsed.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  /// 1-based line number, or 0 when not tied to a line.
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// The toggling-frame analyzer met an event it cannot model.
class UnsupportedSegmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinlab
