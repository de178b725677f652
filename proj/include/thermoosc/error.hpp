// Copyright 2026 The thermoosc Authors
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

#ifndef THERMOOSC_ERROR_HPP
#define THERMOOSC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace thermoosc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operator dimensions do not match.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Requested size exceeds what dense matrices can hold (Fock register cap).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of the operation (T <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Generator kernel is not one-dimensional, or a spectrum is degenerate
/// where nondegeneracy is required.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

/// Root-finding target cannot be reached.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Bad user configuration (JSON schema, CFL violation, unknown experiment).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Linear system that must be solved is singular.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Time integration lost trace or positivity, or a trajectory left its grid.
class InstabilityError : public Error {
 public:
  InstabilityError(const std::string& what, double time)
      : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Classical trajectory left the profile grid.
class BoundaryExitError : public InstabilityError {
 public:
  using InstabilityError::InstabilityError;
};

/// Fewer zero crossings than needed to extract a frequency.
class InsufficientSpanError : public Error {
 public:
  using Error::Error;
};

}  // namespace thermoosc

#endif  // THERMOOSC_ERROR_HPP
