// Copyright 2026 The Rolex Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rolex {

/// Base class of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Shapes or lengths that do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on a config or argument value.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The low-rank similarity iteration produced non-finite values.
class DivergenceError : public Error {
 public:
  DivergenceError(int iteration, const std::string& what)
      : Error("diverged at iteration " + std::to_string(iteration) + ": " +
              what),
        iteration_(iteration) {}

  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

/// No usable spectral gap for the automatic β bound.
class GapError : public Error {
 public:
  using Error::Error;
};

/// kmeans++ cannot pick k distinct seeds.
class SeedingError : public Error {
 public:
  using Error::Error;
};

/// A partition with an empty cluster where every cluster must be populated.
class EmptyClusterError : public Error {
 public:
  using Error::Error;
};

}  // namespace rolex
