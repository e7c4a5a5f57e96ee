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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace metround {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative factor applied to the largest distance when no explicit metric
/// or classification tolerance is given.
inline constexpr double kDefaultRelativeTolerance = 1e-9;

/// A finite set of labelled points with a validated distance matrix.
///
/// Instances only come out of `validate_metric` (directly or through the
/// generators and transforms), so every live object satisfies: zero
/// diagonal, exact symmetry, positive off-diagonal entries, and the triangle
/// inequality up to the tolerance it was validated with.
class FiniteMetricSpace {
 public:
  std::size_t size() const noexcept { return static_cast<std::size_t>(dist_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return dist_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Matrix& distances() const noexcept { return dist_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  double max_distance() const noexcept { return max_distance_; }

  /// Relabelled copy: point i of the result is point order[i] of this space.
  FiniteMetricSpace permuted(std::span<const std::size_t> order) const;

 private:
  friend FiniteMetricSpace validate_metric(const Matrix&, std::optional<std::vector<std::string>>,
                                           std::optional<double>);
  FiniteMetricSpace(Matrix dist, std::vector<std::string> labels);

  Matrix dist_;
  std::vector<std::string> labels_;
  double max_distance_ = 0.0;
};

/// Checks `matrix` and builds a space from it. Asymmetry and diagonal noise
/// within `tol_metric` are cleaned (entries averaged, diagonal zeroed).
/// The default tolerance is 1e-9 times the largest entry.
FiniteMetricSpace validate_metric(const Matrix& matrix,
                                  std::optional<std::vector<std::string>> labels = std::nullopt,
                                  std::optional<double> tol_metric = std::nullopt);

using Triple = std::array<std::size_t, 3>;
using Quad = std::array<std::size_t, 4>;

struct ClassificationReport {
  bool is_ultrametric = false;
  bool is_additive = false;
  /// (x, y, z) with d(x,y) > max(d(x,z), d(y,z)) + tol.
  std::optional<Triple> ultra_witness;
  /// (x, y, z, w) with d(x,y) + d(z,w) > max(d(x,z) + d(y,w), d(x,w) + d(y,z)) + tol.
  std::optional<Quad> additive_witness;
  double tol = 0.0;
};

/// d(x,y) - max(d(x,z), d(y,z)); positive means the triple breaks the
/// ultrametric inequality.
double ultrametric_excess(const FiniteMetricSpace& space, const Triple& t);

/// d(x,y) + d(z,w) - max(d(x,z) + d(y,w), d(x,w) + d(y,z)).
double four_point_excess(const FiniteMetricSpace& space, const Quad& q);

/// Ultrametric and additive (four-point) tests. Witnesses are the
/// lexicographically smallest violating ordered tuples.
ClassificationReport classify(const FiniteMetricSpace& space, std::optional<double> tol = std::nullopt);

/// The space (X, d^p). For p <= 1 this is always a metric; for p > 1 the
/// triangle inequality is re-checked and a failure raises TransformNotMetric.
FiniteMetricSpace metric_transform(const FiniteMetricSpace& space, double p);

}  // namespace metround
