// Copyright 2026 The gscount Authors
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

namespace gscount {

/// Argument outside the mathematical domain of an operation (e.g. N < 2).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// API misuse, such as mixing values bound to different accounting contexts.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A normalization divisor fell below the degeneracy guard.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input basis does not have the structure the optimized kernel relies on.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gscount
