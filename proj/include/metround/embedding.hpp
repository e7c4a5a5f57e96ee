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
#include <utility>

#include "metround/metric_space.hpp"
#include "metround/negative_type.hpp"

namespace metround {

/// Coordinates realizing (X, d^{p/2}) isometrically. Row i belongs to point i;
/// the base point sits at the origin. Columns are ordered by decreasing
/// eigenvalue of A_p, so leftCols(r) is the best rank-r truncation.
struct EuclideanEmbedding {
  double p = 2.0;
  std::size_t base = 0;
  Matrix coords;
  std::size_t rank = 0;
  double residual = 0.0;
  /// Kept eigenvalues, descending.
  Vector spectrum;
};

struct EmbedOptions {
  double p = 2.0;
  std::size_t base = 0;
  /// Eigenvalues at or below rank_tol * lambda_max count as zero.
  double rank_tol = 1e-10;
  /// Relative tolerance for the negative type decision; eigenvalues inside
  /// the Boundary band are dropped as well, so rank == n exactly when the
  /// status is Strict.
  double spectral_tol = kDefaultSpectralTolerance;
};

struct IsometryCheck {
  double max_error = 0.0;
  std::pair<std::size_t, std::size_t> pair{0, 0};
};

/// Factors A_p = U diag(lambda) U^T and uses the rows of U diag(lambda)^{1/2}
/// over the kept eigenvalues. Requires 0 <= p <= 2; raises NotNegativeType
/// when A_p has an eigenvalue below -tau.
EuclideanEmbedding embed_euclidean(const FiniteMetricSpace& space, const EmbedOptions& opts = {});

/// Largest | |row_i - row_j| - d(i,j)^{p/2} | over all pairs, with the pair.
IsometryCheck verify_isometry(const EuclideanEmbedding& embedding, const FiniteMetricSpace& space);

}  // namespace metround
