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

#include "auction/error.h"

namespace auction {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCeilingOutOfRange:
      return "ceiling out of range";
    case ErrorCode::kIncrementOutOfRange:
      return "increment out of range";
    case ErrorCode::kPeriodsOutOfRange:
      return "periods out of range";
    case ErrorCode::kOddCents:
      return "odd cents";
    case ErrorCode::kNonPositiveValuation:
      return "non-positive valuation";
    case ErrorCode::kNegativeFee:
      return "negative fee";
    case ErrorCode::kMissingTieFee:
      return "missing vickrey_tie_fee";
    case ErrorCode::kUnexpectedTieFee:
      return "unexpected vickrey_tie_fee";
    case ErrorCode::kAgentCount:
      return "agent count";
    case ErrorCode::kIllegalAction:
      return "illegal action";
    case ErrorCode::kTerminalState:
      return "terminal state";
    case ErrorCode::kWrongMechanism:
      return "wrong mechanism";
    case ErrorCode::kInvalidLearnerConfig:
      return "invalid learner config";
    case ErrorCode::kWrongTableKind:
      return "wrong table kind";
    case ErrorCode::kEmptyActionSet:
      return "empty action set";
    case ErrorCode::kJointLearnerNeedsSimultaneous:
      return "joint learner requires simultaneous mechanism";
    case ErrorCode::kInvalidExperiment:
      return "invalid experiment";
    case ErrorCode::kMissingFile:
      return "missing file";
    case ErrorCode::kMalformedDocument:
      return "malformed document";
    case ErrorCode::kSchema:
      return "schema";
    case ErrorCode::kIo:
      return "io";
  }
  return "unknown";
}

bool IsValidationError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCeilingOutOfRange:
    case ErrorCode::kIncrementOutOfRange:
    case ErrorCode::kPeriodsOutOfRange:
    case ErrorCode::kOddCents:
    case ErrorCode::kNonPositiveValuation:
    case ErrorCode::kNegativeFee:
    case ErrorCode::kMissingTieFee:
    case ErrorCode::kUnexpectedTieFee:
    case ErrorCode::kAgentCount:
    case ErrorCode::kInvalidLearnerConfig:
    case ErrorCode::kInvalidExperiment:
      return true;
    default:
      return false;
  }
}

}  // namespace auction
