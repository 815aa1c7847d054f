// Copyright 2026 The qmeter Authors
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

#ifndef QMETER_ERRORS_HPP_
#define QMETER_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace qmeter {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on spaces of different dimension.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value violates the invariants of its type (non-Hermitian state,
/// effects not summing to identity, eta outside (0,1], ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Two measurements were required to commute but do not.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

/// First-moment operator of a POM differs from the target observable.
class BiasError : public Error {
 public:
  using Error::Error;
};

/// A quantity was requested at an outcome whose posterior state is undefined.
class NullPosteriorError : public Error {
 public:
  using Error::Error;
};

}  // namespace qmeter

#endif  // QMETER_ERRORS_HPP_
