// Copyright 2026 The Auction RL Authors
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

#ifndef AUCTION_ERROR_H_
#define AUCTION_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace auction {

enum class ErrorCode {
  // Scenario validation.
  kCeilingOutOfRange,
  kIncrementOutOfRange,
  kPeriodsOutOfRange,
  kOddCents,
  kNonPositiveValuation,
  kNegativeFee,
  kMissingTieFee,
  kUnexpectedTieFee,
  kAgentCount,
  // Mechanism use.
  kIllegalAction,
  kTerminalState,
  kWrongMechanism,
  // Learners.
  kInvalidLearnerConfig,
  kWrongTableKind,
  kEmptyActionSet,
  kJointLearnerNeedsSimultaneous,
  // Experiments.
  kInvalidExperiment,
  // Configuration files.
  kMissingFile,
  kMalformedDocument,
  kSchema,
  kIo,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// True for the codes raised while validating a scenario or experiment.
bool IsValidationError(ErrorCode code);

}  // namespace auction

#endif  // AUCTION_ERROR_H_
