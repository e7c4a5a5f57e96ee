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

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "metround/metric_space.hpp"

namespace metround {

/// Points (x00, x01, x11, x10) of a roundness quadruple. The diagonals are
/// (x00, x11) and (x01, x10); the sides run x00-x01-x11-x10-x00.
using RoundnessQuad = std::array<std::size_t, 4>;

struct RoundnessCheck {
  double p = 1.0;
  bool holds = true;
  /// Worst violating quadruple (largest margin; ties go to the first shape in
  /// `roundness_quadruple_shapes` order).
  std::optional<RoundnessQuad> witness;
  /// LHS - RHS at the witness; meaningful only when a witness is present.
  double margin = 0.0;
  double tol = 0.0;
};

struct QuadrupleProfile {
  RoundnessQuad quadruple{};
  /// Largest p such that the quadruple inequality holds on all of [1, p]
  /// (capped at the grid maximum).
  double sup_contiguous = 0.0;
};

struct RoundnessProfile {
  std::vector<QuadrupleProfile> records;
  /// Every p in [1, global_lower] is a roundness exponent.
  double global_lower = 1.0;
  /// Quadruple attaining global_lower.
  RoundnessQuad binding{};
  std::vector<double> grid;
};

struct RoundnessProfileOptions {
  double p_grid_max = 32.0;
  double grid_step = 0.01;
  double refine_tol = 1e-9;
};

/// d(x00,x11)^p + d(x01,x10)^p minus the sum of the four side terms.
double roundness_margin(const FiniteMetricSpace& space, double p, const RoundnessQuad& q);

/// One representative per orbit of the quadruple symmetry group (swapping
/// x00/x11, swapping x01/x10, exchanging the diagonals), repeated points
/// included. Representatives are (u1, u2, v1, v2) with diagonals
/// {u1 <= v1} <= {u2 <= v2} in lexicographic order.
std::vector<RoundnessQuad> roundness_quadruple_shapes(std::size_t points);

/// Checks the roundness inequality at exponent p >= 1 over all quadruples.
/// The default tolerance is 1e-9 * (max distance)^p.
RoundnessCheck roundness_exponent_check(const FiniteMetricSpace& space, double p,
                                        std::optional<double> tol = std::nullopt);

/// Per-quadruple scan of the exponents for which the inequality holds on a
/// contiguous interval starting at p = 1. Only that interval is certified;
/// nothing is claimed above global_lower.
RoundnessProfile roundness_profile(const FiniteMetricSpace& space, const RoundnessProfileOptions& opts = {});

/// Infinite roundness holds exactly for ultrametric spaces.
bool is_infinite_roundness(const FiniteMetricSpace& space);

}  // namespace metround
