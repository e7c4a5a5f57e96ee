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

#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace metround {

enum class ErrorCode {
  NotSquare,
  TooFewPoints,
  NonFiniteEntry,
  AsymmetricEntry,
  NonzeroDiagonal,
  NonpositiveOffDiagonal,
  TriangleViolation,
  TransformNotMetric,
  InvalidArgument,
  CapReachedNonUltrametric,
  NotNegativeType,
  NoKernelVector,
  ParamOutOfRange,
  TargetOutOfRange,
  DisconnectedTree,
  CycleDetected,
  DimensionMismatch,
  WeightSumInvalid,
  IndexOverlap,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `indices()` carries the offending
/// point indices (row/column, triple, ...) and `value()` the associated
/// scalar (slack, exponent, eigenvalue) when one exists, NaN otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::size_t> indices = {},
        double value = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(message),
        code_(code),
        indices_(std::move(indices)),
        value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  double value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> indices_;
  double value_;
};

}  // namespace metround
