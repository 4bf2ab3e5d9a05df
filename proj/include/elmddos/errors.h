/*
 * Copyright 2026 The elmddos Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef ELMDDOS_ERRORS_H_
#define ELMDDOS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace elmddos {

// Every failure raised by the library derives from Error. The CLI maps the
// concrete type onto its exit code: ShapeError, ValidationError and DataError
// are data problems (2), NumericError is a numeric failure (3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions do not conform.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input violates a documented precondition (non-finite values, bad labels,
// zero variance, empty selection, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A class is too small to be split or folded as requested.
class StratificationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Iterative numerics failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Unreadable, malformed, or inconsistent files and schemas.
class DataError : public Error {
 public:
  using Error::Error;
};

class IntegrityError : public DataError {
 public:
  using DataError::DataError;
};

class UnsupportedVersionError : public DataError {
 public:
  using DataError::DataError;
};

}  // namespace elmddos

#endif  // ELMDDOS_ERRORS_H_
