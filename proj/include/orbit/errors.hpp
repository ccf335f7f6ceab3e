// Copyright 2026 The Orbitgame Authors. All rights reserved.
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

#ifndef ORBIT_ERRORS_HPP_
#define ORBIT_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace orbit {

enum class ErrorCode {
  kDimensionMismatch,
  kIndexOutOfRange,
  kInvalidArgument,
  kSingularSystem,
  kNoValidEquilibrium,
  kPhysicallyInvalid,
  kActiveSetChange,
  kNonDecreasingDebris,
  kSolverFailure,
  kNoConvergence,
  kBudgetExceeded,
  kEvaluationFailure,
  kParseError,
  kValidationError,
  kOverrideError,
};

std::string_view to_string(ErrorCode code);

// Base error for every failure raised by the library. `details` carries
// structured context (e.g. the list of violated scenario constraints).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::string> details = {})
      : std::runtime_error(message), code_(code), details_(std::move(details)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  ErrorCode code_;
  std::vector<std::string> details_;
};

}  // namespace orbit

#endif  // ORBIT_ERRORS_HPP_
