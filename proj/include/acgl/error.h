// Copyright 2026 The acgl Authors.
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

#ifndef ACGL_ERROR_H_
#define ACGL_ERROR_H_

#include <stdexcept>
#include <string>

namespace acgl {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (ranges, shapes, disjointness).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Matrix dimensions do not line up.
class ShapeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A text file could not be parsed. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& path, int line, const std::string& what)
      : Error(path + ":" + std::to_string(line) + ": " + what),
        path_(path),
        line_(line) {}

  const std::string& path() const { return path_; }
  int line() const { return line_; }

 private:
  std::string path_;
  int line_;
};

// Filesystem failures. The message always names the offending path.
class IoError : public Error {
 public:
  using Error::Error;
};

// Experiment or CLI configuration is invalid. `field` names the key.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// A factorization failed; the input is numerically singular or indefinite.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace acgl

#endif  // ACGL_ERROR_H_
