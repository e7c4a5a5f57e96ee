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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "metround/metric_space.hpp"

namespace metround {

/// Relative spectral tolerance: tau = factor * max |eigenvalue|.
inline constexpr double kDefaultSpectralTolerance = 1e-9;

/// Matrix of p-th powers of the distances, with 0^0 taken as 0 on the
/// diagonal so that D_0 is the all-ones matrix minus the identity.
struct PDistanceMatrix {
  double p = 0.0;
  Matrix entries;
};

/// The base-point centred form a_jk = (d^p(b,j) + d^p(b,k) - d^p(j,k)) / 2 over
/// the points other than the base b. Row r corresponds to point points[r].
struct GramMatrix {
  double p = 0.0;
  std::size_t base = 0;
  std::vector<std::size_t> points;
  Matrix entries;
  Vector eigenvalues;   // ascending
  Matrix eigenvectors;  // columns match `eigenvalues`
};

enum class NegTypeStatus { Strict, Boundary, Fails };

struct NegTypeResult {
  double p = 0.0;
  NegTypeStatus status = NegTypeStatus::Strict;
  double min_eigenvalue = 0.0;
  double max_abs_eigenvalue = 0.0;
  /// Absolute threshold tau used for the tri-state decision.
  double tolerance = 0.0;
  std::size_t base = 0;
  /// Unit eigenvector for the smallest eigenvalue, in Gram-row order.
  /// Present for Boundary and Fails.
  std::optional<Vector> certificate;
};

/// <D_p^{-1} 1, 1>, or nothing when D_p is numerically singular.
struct SanchezResult {
  std::optional<double> value;
  double rcond = 0.0;
  bool singular() const noexcept { return !value.has_value(); }
};

enum RoundnessMethod : std::uint32_t {
  kSpectralBisection = 1u << 0,
  kSanchezRoot = 1u << 1,
  kUltrametricShortcut = 1u << 2,
};

struct GeneralizedRoundnessOptions {
  double p_max = 64.0;
  double bis_tol = 1e-9;
  double spectral_tol = kDefaultSpectralTolerance;
};

struct GeneralizedRoundnessResult {
  bool infinite = false;
  double value = 0.0;
  /// Bracket [lo, hi]: p-negative type holds at lo and fails at hi.
  double lo = 0.0;
  double hi = 0.0;
  std::uint32_t methods = 0;
  /// Root of the Sanchez invariant near the bracket, when the cross-check ran.
  std::optional<double> sanchez_root;
  int probes = 0;
};

struct WeightedPoint {
  std::size_t index = 0;
  double weight = 0.0;
};

/// A configuration breaking the generalized roundness inequality.
/// `margin` is LHS - RHS of the weighted form (weights summing to 1 per side);
/// `count_margin` is the unweighted LHS - RHS over the point lists with
/// multiplicity, present when the configuration came from the exhaustive scan.
struct Violation {
  double p = 0.0;
  std::vector<WeightedPoint> a_side;
  std::vector<WeightedPoint> b_side;
  double margin = 0.0;
  std::optional<double> count_margin;
};

PDistanceMatrix p_distance_matrix(const FiniteMetricSpace& space, double p);

GramMatrix gram_matrix(const FiniteMetricSpace& space, double p, std::size_t base = 0);

NegTypeResult negative_type_status(const FiniteMetricSpace& space, double p,
                                   double spectral_tol = kDefaultSpectralTolerance, std::size_t base = 0);

/// Solves D_p b = 1 with a pivoted symmetric indefinite factorization and
/// returns 1^T b. Singular when the reciprocal condition number is below 1e-12.
SanchezResult sanchez_invariant(const FiniteMetricSpace& space, double p);

/// Supremal p-negative type. Infinite for ultrametric spaces; otherwise a
/// doubling search from p = 1 followed by bisection on "A_p is PSD".
GeneralizedRoundnessResult generalized_roundness(const FiniteMetricSpace& space,
                                                 const GeneralizedRoundnessOptions& opts = {});

/// Lifts a Gram-row vector to one entry per point: entry `base` receives
/// -sum(eta), the others are copied in point order.
Vector augment_at_base(const Vector& eta, std::size_t base);

/// LHS - RHS of the weighted generalized roundness inequality.
double weighted_gr_margin(const FiniteMetricSpace& space, double p, std::span<const WeightedPoint> a_side,
                          std::span<const WeightedPoint> b_side);

/// Searches for a configuration violating the generalized roundness
/// inequality at exponent p: all multiset pairs (a, b) of size <= max_size
/// with disjoint supports, plus `trials` random weighted configurations whose
/// weights are then pushed uphill on the margin.
/// A configuration counts only when its margin exceeds tau * (sum of squared
/// weights), tau being the default spectral tolerance, so a reported
/// violation always coincides with a Fails status. Returns the worst
/// violation found; nothing found is not a proof.
std::optional<Violation> gr_violation_search(const FiniteMetricSpace& space, double p, std::size_t max_size,
                                             std::size_t trials, std::uint64_t seed);

/// log2(1 + 1/n): every (n+1)-point space has p-negative type below this.
double deza_maehara_floor(long n);

}  // namespace metround
