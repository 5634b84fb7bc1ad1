// Copyright 2026 The ergo Authors
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

#include <stdexcept>
#include <string>

namespace ergo {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two scalars carry different irrational tags with nonzero coefficients.
class IncompatibleBasis : public Error {
 public:
  using Error::Error;
};

/// A result would need more parity tails than the representation allows,
/// or tails accumulating at a point other than 0 or 1.
class RepresentationOverflow : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined on sets carrying tails.
class UnsupportedRepresentation : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A configured budget (refinement steps, component count) ran out.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

class InvalidTowerSet : public Error {
 public:
  using Error::Error;
};

/// An identity the splinter construction guarantees failed to hold.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ergo
