// Copyright 2026 The gwh Authors
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

#include <stdexcept>
#include <string>
#include <utility>

namespace gwh {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad moduli, out-of-range residues, mismatched groups,
/// unparseable configuration. `field()` names the offending input when known.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::string field = {})
      : Error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Two routes that must agree exactly (spectrum vs. density law, fibers vs.
/// dense operator, ...) disagreed beyond tolerance. Always an implementation
/// bug, never a property of the input.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

/// The Hermitian eigensolver did not converge.
class EigenFailure : public Error {
 public:
  using Error::Error;
};

/// An operation that needs an invertible frame operator got a non-frame.
class NotAFrame : public Error {
 public:
  using Error::Error;
};

}  // namespace gwh
