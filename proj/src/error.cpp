// Copyright 2026 The metround Authors
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

#include "metround/error.hpp"

namespace metround {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::AsymmetricEntry: return "AsymmetricEntry";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::NonpositiveOffDiagonal: return "NonpositiveOffDiagonal";
    case ErrorCode::TriangleViolation: return "TriangleViolation";
    case ErrorCode::TransformNotMetric: return "TransformNotMetric";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::CapReachedNonUltrametric: return "CapReachedNonUltrametric";
    case ErrorCode::NotNegativeType: return "NotNegativeType";
    case ErrorCode::NoKernelVector: return "NoKernelVector";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::DisconnectedTree: return "DisconnectedTree";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::WeightSumInvalid: return "WeightSumInvalid";
    case ErrorCode::IndexOverlap: return "IndexOverlap";
  }
  return "Unknown";
}

}  // namespace metround
