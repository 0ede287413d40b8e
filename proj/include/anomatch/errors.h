// Copyright 2026 The anomatch Authors
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

#ifndef ANOMATCH_ERRORS_H_
#define ANOMATCH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace anomatch {

// Base of every error caused by bad user input (files, flags, configs).
// The CLI maps these to exit code 2; anything else is an internal error.
class UserError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public UserError {
 public:
  using UserError::UserError;
};

// A token that is not a number where one is expected.
class ParseError : public UserError {
 public:
  using UserError::UserError;
};

// Well-formed tokens describing an invalid object (e.g. node id out of range).
class MalformedInputError : public UserError {
 public:
  using UserError::UserError;
};

class ShapeError : public UserError {
 public:
  using UserError::UserError;
};

class IoError : public UserError {
 public:
  using UserError::UserError;
};

// ROC/AUC requested for labels with a single class.
class UndefinedMetricError : public UserError {
 public:
  using UserError::UserError;
};

}  // namespace anomatch

#endif  // ANOMATCH_ERRORS_H_
