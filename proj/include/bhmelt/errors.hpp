// Copyright 2026 The bhmelt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BHMELT_ERRORS_HPP
#define BHMELT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bhmelt {

// Base for all library errors. Maps to CLI exit code 3 unless overridden.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration input (file, schema, CLI arguments). CLI exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Invalid argument to a library operation.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Fock state not present in a basis.
class BasisLookupError : public Error {
 public:
  using Error::Error;
};

// Time integration failed; carries the simulation time reached.
class PropagationError : public Error {
 public:
  PropagationError(const std::string& what, double t_us)
      : Error(what + " (at t = " + std::to_string(t_us) + " us)"), t_us_(t_us) {}
  double time_us() const { return t_us_; }

 private:
  double t_us_;
};

// Eigenstate continuity tracking could not pick a unique successor.
class AmbiguityError : public Error {
 public:
  AmbiguityError(const std::string& what, double s)
      : Error(what + " (at s = " + std::to_string(s) + ")"), s_(s) {}
  double ramp_parameter() const { return s_; }

 private:
  double s_;
};

// Confusion matrix too ill-conditioned to invert.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

// Conditioning site has (numerically) zero occupation.
class DegenerateConditionError : public Error {
 public:
  using Error::Error;
};

// Observable undefined for the given state (e.g. vacuum density normalization).
class UndefinedDensityError : public Error {
 public:
  using Error::Error;
};

// Least-squares fit cannot run on the given data.
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace bhmelt

#endif
