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

#include <optional>
#include <vector>

#include "metround/metric_space.hpp"
#include "metround/negative_type.hpp"

namespace metround {

/// Two disjoint weighted point sets, each with weights summing to 1, on which
/// the weighted generalized roundness inequality is an equality at p.
struct PolygonalEquality {
  double p = 0.0;
  std::vector<WeightedPoint> a_side;
  std::vector<WeightedPoint> b_side;
  double residual = 0.0;
  /// n^2 * max d^p * machine epsilon * 1e4.
  double tolerance = 0.0;
};

/// Residual tolerance for an equality at exponent p on this space.
double polygonal_tolerance(const FiniteMetricSpace& space, double p);

/// Returns nothing for ultrametric spaces. Otherwise takes the supremal
/// negative type exponent, sharpens it to the point where A_p turns singular,
/// and splits the augmented kernel vector into its positive and negative
/// parts. `kernel_tol` bounds |min eigenvalue| relative to the largest one
/// (default 1e-6); exceeding it raises NoKernelVector.
std::optional<PolygonalEquality> find_polygonal_equality(const FiniteMetricSpace& space,
                                                         std::optional<double> kernel_tol = std::nullopt);

/// |LHS - RHS| of the equality on `space`. Raises WeightSumInvalid when a
/// side has non-positive weights or does not sum to 1 (within 1e-12), and
/// IndexOverlap when a point repeats within or across the sides.
double verify_polygonal_equality(const FiniteMetricSpace& space, const PolygonalEquality& eq);

}  // namespace metround
