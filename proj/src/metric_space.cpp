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

#include "metround/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "metround/error.hpp"

namespace metround {
namespace {

std::string fmt_index_list(std::initializer_list<std::size_t> idx) {
  std::ostringstream os;
  os << '(';
  bool first = true;
  for (auto i : idx) {
    if (!first) os << ',';
    os << i;
    first = false;
  }
  os << ')';
  return os.str();
}

// First (i, j, k) in lexicographic order, i != k, with
// d(i,k) > d(i,j) + d(j,k) + tol. Returns the slack through `slack`.
std::optional<Triple> first_triangle_violation(const Matrix& d, double tol, double& slack) {
  const auto n = d.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j == i) continue;
      for (Eigen::Index k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double s = d(i, k) - d(i, j) - d(j, k);
        if (s > tol) {
          slack = s;
          return Triple{static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                        static_cast<std::size_t>(k)};
        }
      }
    }
  return std::nullopt;
}

}  // namespace

FiniteMetricSpace::FiniteMetricSpace(Matrix dist, std::vector<std::string> labels)
    : dist_(std::move(dist)), labels_(std::move(labels)) {
  max_distance_ = dist_.maxCoeff();
}

FiniteMetricSpace FiniteMetricSpace::permuted(std::span<const std::size_t> order) const {
  const auto n = size();
  if (order.size() != n) throw Error(ErrorCode::InvalidArgument, "permutation has wrong length");
  std::vector<bool> seen(n, false);
  for (auto o : order) {
    if (o >= n || seen[o]) throw Error(ErrorCode::InvalidArgument, "not a permutation");
    seen[o] = true;
  }
  Matrix d(dist_.rows(), dist_.cols());
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = labels_[order[i]];
    for (std::size_t j = 0; j < n; ++j)
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(order[i], order[j]);
  }
  return FiniteMetricSpace(std::move(d), std::move(labels));
}

FiniteMetricSpace validate_metric(const Matrix& matrix, std::optional<std::vector<std::string>> labels,
                                  std::optional<double> tol_metric) {
  if (matrix.rows() != matrix.cols())
    throw Error(ErrorCode::NotSquare, "distance matrix is " + std::to_string(matrix.rows()) + "x" +
                                          std::to_string(matrix.cols()));
  const auto n = matrix.rows();
  if (n < 2) throw Error(ErrorCode::TooFewPoints, "a metric space needs at least 2 points");

  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (!std::isfinite(matrix(i, j)))
        throw Error(ErrorCode::NonFiniteEntry, "non-finite entry at " + fmt_index_list({std::size_t(i), std::size_t(j)}),
                    {std::size_t(i), std::size_t(j)});

  const double scale = matrix.cwiseAbs().maxCoeff();
  const double tol = tol_metric.value_or(kDefaultRelativeTolerance * scale);
  if (!(tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");

  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(matrix(i, i)) > tol)
      throw Error(ErrorCode::NonzeroDiagonal, "nonzero diagonal entry at " + fmt_index_list({std::size_t(i)}),
                  {std::size_t(i)}, matrix(i, i));

  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (std::abs(matrix(i, j) - matrix(j, i)) > tol)
        throw Error(ErrorCode::AsymmetricEntry,
                    "d" + fmt_index_list({std::size_t(i), std::size_t(j)}) + " != d" +
                        fmt_index_list({std::size_t(j), std::size_t(i)}),
                    {std::size_t(i), std::size_t(j)}, matrix(i, j) - matrix(j, i));

  Matrix d = 0.5 * (matrix + matrix.transpose());
  d.diagonal().setZero();

  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (!(d(i, j) > 0.0))
        throw Error(ErrorCode::NonpositiveOffDiagonal,
                    "nonpositive distance at " + fmt_index_list({std::size_t(i), std::size_t(j)}),
                    {std::size_t(i), std::size_t(j)}, d(i, j));

  double slack = 0.0;
  if (auto t = first_triangle_violation(d, tol, slack)) {
    auto [i, j, k] = *t;
    throw Error(ErrorCode::TriangleViolation,
                "triangle inequality fails at " + fmt_index_list({i, j, k}) + " by " + std::to_string(slack),
                {i, j, k}, slack);
  }

  std::vector<std::string> names;
  if (labels) {
    if (labels->size() != static_cast<std::size_t>(n))
      throw Error(ErrorCode::InvalidArgument, "label count does not match matrix side");
    names = std::move(*labels);
  } else {
    names.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) names.push_back(std::to_string(i));
  }
  return FiniteMetricSpace(std::move(d), std::move(names));
}

double ultrametric_excess(const FiniteMetricSpace& s, const Triple& t) {
  const auto [x, y, z] = t;
  return s(x, y) - std::max(s(x, z), s(y, z));
}

double four_point_excess(const FiniteMetricSpace& s, const Quad& q) {
  const auto [x, y, z, w] = q;
  return s(x, y) + s(z, w) - std::max(s(x, z) + s(y, w), s(x, w) + s(y, z));
}

ClassificationReport classify(const FiniteMetricSpace& space, std::optional<double> tol) {
  ClassificationReport report;
  report.tol = tol.value_or(kDefaultRelativeTolerance * space.max_distance());
  const std::size_t n = space.size();

  // Ordered triples (x, y, z) with x < y; the lexicographic scan stops at the
  // first violation so the witness is the smallest one.
  for (std::size_t x = 0; x < n && !report.ultra_witness; ++x)
    for (std::size_t y = x + 1; y < n && !report.ultra_witness; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        if (ultrametric_excess(space, {x, y, z}) > report.tol) {
          report.ultra_witness = Triple{x, y, z};
          break;
        }
      }
  report.is_ultrametric = !report.ultra_witness;

  // Quadruples with a repeated point satisfy the four-point condition
  // trivially, so only distinct indices are scanned.
  for (std::size_t x = 0; x < n && !report.additive_witness; ++x)
    for (std::size_t y = 0; y < n && !report.additive_witness; ++y) {
      if (y == x) continue;
      for (std::size_t z = 0; z < n && !report.additive_witness; ++z) {
        if (z == x || z == y) continue;
        for (std::size_t w = 0; w < n; ++w) {
          if (w == x || w == y || w == z) continue;
          if (four_point_excess(space, {x, y, z, w}) > report.tol) {
            report.additive_witness = Quad{x, y, z, w};
            break;
          }
        }
      }
    }
  report.is_additive = !report.additive_witness;
  return report;
}

FiniteMetricSpace metric_transform(const FiniteMetricSpace& space, double p) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw Error(ErrorCode::InvalidArgument, "metric transform exponent must be positive and finite", {}, p);
  if (p == 1.0) return space;
  const Matrix dp = space.distances().array().pow(p).matrix();
  if (p > 1.0) {
    double slack = 0.0;
    const double tol = kDefaultRelativeTolerance * dp.maxCoeff();
    if (auto t = first_triangle_violation(dp, tol, slack)) {
      auto [i, j, k] = *t;
      throw Error(ErrorCode::TransformNotMetric,
                  "d^" + std::to_string(p) + " breaks the triangle inequality at " + fmt_index_list({i, j, k}),
                  {i, j, k}, p);
    }
  }
  // p < 1 keeps the triangle inequality exactly in real arithmetic; the
  // validation tolerance absorbs rounding.
  return validate_metric(dp, space.labels(), kDefaultRelativeTolerance * dp.maxCoeff());
}

}  // namespace metround
