/*
 * Copyright 2026 The fou-lse Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace fou {

// Input outside the mathematical domain of an operation (bad theta, H, x...).
// CLI maps every ValidationError to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Memory/cost guard violated.
class SizeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Runtime failures on otherwise valid input.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegeneratePathError : public DataError {
 public:
  using DataError::DataError;
};

class FactorizationError : public DataError {
 public:
  using DataError::DataError;
};

class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace fou
