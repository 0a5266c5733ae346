// Copyright 2026 The eprlab Authors
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

namespace eprlab {

/// Raised when an input violates a documented precondition or invariant.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// The closed-form moment-matching solution divides by <q1 q2>; raised when
/// that moment is too close to zero to use it.
class DegenerateMoment : public ValidationError {
 public:
  explicit DegenerateMoment(const std::string& what) : ValidationError(what) {}
};

/// Two independent computations of the same quantity disagreed.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace eprlab
