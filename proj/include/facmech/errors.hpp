// Copyright 2026 The facmech Authors.
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

#ifndef FACMECH_ERRORS_HPP_
#define FACMECH_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace facmech {

// Input outside the domain of an operation: a location off the interval, an
// agent type the mechanism does not accept, an empty profile.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A mechanism parameter or probability rule that breaks a stated bound.
class ValidityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operation exists but not for this kind of input (randomized mechanism
// in a deterministic-only check, multi-location egalitarian optimum).
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed instance file. The message carries the line/field context.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownMechanismError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace facmech

#endif  // FACMECH_ERRORS_HPP_
