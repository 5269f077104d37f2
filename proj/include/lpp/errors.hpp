// Copyright 2026 The LPP Authors.
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

namespace lpp {

// Argument outside the mathematical domain of an operation (u not in (0,1),
// i >= j, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid model configuration (probabilities, tail index, spec strings).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation needs a property the distribution does not have (e.g. b_n on a
// light-tailed law).
class UnsupportedDistribution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exponential-cost oracle refused: instance too large.
class GuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A moment gate refused to run an experiment whose limit theorem does not
// apply to the configured distribution.
class GateRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lpp
