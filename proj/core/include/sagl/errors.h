/* Copyright 2026 The SAGL Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SAGL_ERRORS_H_
#define SAGL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace sagl {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand dimensions do not conform.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Iteration cap hit, non-finite value produced, or a bracket failed.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A value violates an operation's precondition (empty input, batch too small, ...).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed binary file: bad magic, version, dtype or payload length.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Two sources of truth disagree (manifest vs payload, views vs checkpoint).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Unknown key, unparsable value or violated constraint in a configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Filesystem failure.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sagl

#endif  // SAGL_ERRORS_H_
