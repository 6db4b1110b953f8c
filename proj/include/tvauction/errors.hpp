// Copyright 2026 The tvauction Authors.
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

#ifndef TVAUCTION_ERRORS_HPP_
#define TVAUCTION_ERRORS_HPP_

#include <stdexcept>

namespace tvauction {

// Invalid constructor arguments, run parameters, or configuration file
// contents.  The message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value was passed outside the support [v_m, v_M] of the distribution
// it is being evaluated against.
class OutOfSupportError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A bound or identity was requested for a schedule that does not satisfy
// its hypothesis (wrong state count, widths not strictly monotone, ...).
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tvauction

#endif  // TVAUCTION_ERRORS_HPP_
