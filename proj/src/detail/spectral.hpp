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

// Matrix kernels shared by the negative type, embedding and polygonal code.
// They work on raw matrices so callers can pass normalized copies.

#include <cstddef>

#include "metround/negative_type.hpp"

namespace metround::detail {

/// Entrywise d^p with a zero diagonal (0^0 := 0).
Matrix power_matrix(const Matrix& dist, double p);

/// Base-centred form of a p-distance matrix; row r is the r-th point after
/// skipping `base`.
Matrix centered_form(const Matrix& dp, std::size_t base);

/// Index of the r-th Gram row in point numbering.
inline std::size_t gram_row_point(std::size_t row, std::size_t base) { return row < base ? row : row + 1; }

/// Tri-state status of A_p built from `dist` (any scaling).
NegTypeResult assess(const Matrix& dist, double p, double spectral_tol, std::size_t base, bool want_vectors);

/// Smallest eigenvalue of A_p for base 0, no tolerance applied.
double min_eigenvalue(const Matrix& dist, double p);

/// Signed root of the smallest eigenvalue of A_p near a bracket where p-negative
/// type holds (up to tolerance) at `lo` and fails at `hi`.
double polish_kernel_exponent(const Matrix& dist, double lo, double hi);

SanchezResult sanchez_from_pdist(const Matrix& dp);

}  // namespace metround::detail
