// Copyright 2026 The FedFair Authors
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

#ifndef FEDFAIR_STATUS_H_
#define FEDFAIR_STATUS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace fedfair {

enum class ErrorCode {
  kEmptyCoalition,
  kNonPositiveSamples,
  kNonFiniteValue,
  kNegativeVariance,
  kDuplicateId,
  kTargetNotInCoalition,
  kWeightDomainMismatch,
  kNonUnitSum,
  kDegenerateParams,
  kZeroDenominator,
  kUndefinedBound,
  kNonIntegerSamples,
  kInvalidNoiseList,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Thrown by every library operation whose precondition or input invariant
// fails. The code identifies the violated invariant.
class FedFairError : public std::runtime_error {
 public:
  FedFairError(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fedfair

#endif  // FEDFAIR_STATUS_H_
