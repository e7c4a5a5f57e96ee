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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "metround/generators.hpp"
#include "metround/metric_space.hpp"

namespace mrtest {

using metround::FiniteMetricSpace;
using metround::Matrix;
using metround::Vector;

inline FiniteMetricSpace c4() {
  Matrix d(4, 4);
  d << 0, 1, 2, 1,  //
      1, 0, 1, 2,   //
      2, 1, 0, 1,   //
      1, 2, 1, 0;
  return metround::validate_metric(d);
}

/// Off-diagonal entries uniform in [1, 2]; always a metric.
inline Matrix random_band_matrix(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(1.0, 2.0);
  Matrix d = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = u(rng);
  return d;
}

/// Shortest-path closure (Floyd-Warshall) of a symmetric positive matrix.
inline Matrix metric_closure(Matrix d) {
  const auto n = d.rows();
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) d(i, j) = std::min(d(i, j), d(i, k) + d(k, j));
  return d;
}

/// Random metric from random weights in [0.1, 3] closed under shortest paths.
inline FiniteMetricSpace random_metric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 3.0);
  Matrix d = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = u(rng);
  return metround::validate_metric(metric_closure(d));
}

/// Ultrametric with multiplicative noise, then closed into a metric.
inline FiniteMetricSpace perturbed_ultrametric(std::size_t n, std::mt19937_64& rng, double noise = 0.1) {
  const auto base = metround::random_ultrametric(n, rng());
  std::uniform_real_distribution<double> u(1.0 - noise, 1.0 + noise);
  Matrix d = base.distances();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = d(i, j) * u(rng);
  return metround::validate_metric(metric_closure(d));
}

/// Euclidean distances of n random points in R^dim.
inline FiniteMetricSpace random_euclidean(std::size_t n, std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix x(n, dim);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < dim; ++k) x(i, k) = g(rng);
  Matrix d = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d(i, j) = d(j, i) = (x.row(i) - x.row(j)).norm();
  return metround::validate_metric(d);
}

/// Smallest eigenvalue of -V^T D_p V / 2 with V an orthonormal basis of the
/// sum-zero hyperplane. Same sign behaviour as the base-point Gram matrix but
/// reached through a different matrix.
inline double projected_min_eigenvalue(const Matrix& dist, double p) {
  const auto n = dist.rows();
  Matrix dp(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) dp(i, j) = i == j ? 0.0 : std::pow(dist(i, j), p);
  Matrix ones = Matrix::Ones(n, 1);
  Eigen::HouseholderQR<Matrix> qr(ones);
  Matrix q = qr.householderQ();
  Matrix v = q.rightCols(n - 1);
  Matrix m = -0.5 * v.transpose() * dp * v;
  return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

/// Bisection on the projected spectrum, normalised to unit diameter.
inline double oracle_generalized_roundness(const FiniteMetricSpace& space, double hi = 64.0) {
  const Matrix unit = space.distances() / space.max_distance();
  auto ok = [&](double p) {
    const double lam = projected_min_eigenvalue(unit, p);
    Matrix dp = unit.array().pow(p).matrix();
    return lam >= -1e-9 * std::max(1.0, dp.norm());
  };
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace mrtest
