// Copyright 2026 The swipt-sched Authors
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

#ifndef SWIPT_ERRORS_H_
#define SWIPT_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swipt {

// Argument outside the mathematical domain of an operation (negative gain,
// NaN input, order outside 1..N, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An adaptive procedure ran out of budget. Carries the best estimate it had
// reached and the associated error bound.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error_bound)
      : std::runtime_error(what),
        estimate_(estimate),
        error_bound_(error_bound) {}

  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

// Problem size exceeds a guard (e.g. exhaustive enumeration limits).
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Misuse of an API: calling an ET-only report on a non-ET result.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace swipt

#endif  // SWIPT_ERRORS_H_
