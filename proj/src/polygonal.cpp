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

#include "metround/polygonal.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "detail/spectral.hpp"
#include "metround/error.hpp"

namespace metround {

double polygonal_tolerance(const FiniteMetricSpace& space, double p) {
  const double n = static_cast<double>(space.size());
  return n * n * std::pow(space.max_distance(), p) * std::numeric_limits<double>::epsilon() * 1e4;
}

std::optional<PolygonalEquality> find_polygonal_equality(const FiniteMetricSpace& space,
                                                         std::optional<double> kernel_tol) {
  const auto gr = generalized_roundness(space);
  if (gr.infinite) return std::nullopt;

  const Matrix unit = space.distances() / space.max_distance();
  const double p = detail::polish_kernel_exponent(unit, gr.lo, gr.hi);

  const auto a = detail::centered_form(detail::power_matrix(unit, p), 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const double lambda_min = es.eigenvalues()(0);
  const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
  if (std::abs(lambda_min) > kernel_tol.value_or(1e-6) * scale)
    throw Error(ErrorCode::NoKernelVector,
                "smallest eigenvalue " + std::to_string(lambda_min) + " at p = " + std::to_string(p) +
                    " is not numerically zero",
                {}, lambda_min);

  Vector eta = augment_at_base(es.eigenvectors().col(0), 0);
  const double cut = 1e-12 * eta.norm();
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    if (std::abs(eta(i)) < cut) continue;
    if (eta(i) < 0.0) eta = -eta;
    break;
  }

  PolygonalEquality eq;
  eq.p = p;
  double pos = 0.0;
  double neg = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    if (std::abs(eta(i)) < cut) continue;
    if (eta(i) > 0.0) {
      eq.a_side.push_back({std::size_t(i), eta(i)});
      pos += eta(i);
    } else {
      eq.b_side.push_back({std::size_t(i), -eta(i)});
      neg -= eta(i);
    }
  }
  if (eq.a_side.empty() || eq.b_side.empty())
    throw Error(ErrorCode::NoKernelVector, "kernel vector does not split into two sides", {}, lambda_min);
  for (auto& w : eq.a_side) w.weight /= pos;
  for (auto& w : eq.b_side) w.weight /= neg;

  eq.tolerance = polygonal_tolerance(space, p);
  eq.residual = verify_polygonal_equality(space, eq);
  return eq;
}

double verify_polygonal_equality(const FiniteMetricSpace& space, const PolygonalEquality& eq) {
  const std::size_t n = space.size();
  std::vector<int> owner(n, 0);
  auto check_side = [&](const std::vector<WeightedPoint>& side, int tag, const char* name) {
    if (side.empty()) throw Error(ErrorCode::WeightSumInvalid, std::string(name) + " side is empty");
    double sum = 0.0;
    for (const auto& w : side) {
      if (w.index >= n)
        throw Error(ErrorCode::InvalidArgument, "point index " + std::to_string(w.index) + " out of range", {w.index});
      if (!(w.weight > 0.0))
        throw Error(ErrorCode::WeightSumInvalid, std::string(name) + " side has a non-positive weight", {w.index},
                    w.weight);
      if (owner[w.index] != 0)
        throw Error(ErrorCode::IndexOverlap, "point " + std::to_string(w.index) + " appears twice", {w.index});
      owner[w.index] = tag;
      sum += w.weight;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw Error(ErrorCode::WeightSumInvalid, std::string(name) + " weights sum to " + std::to_string(sum), {}, sum);
  };
  check_side(eq.a_side, 1, "a");
  check_side(eq.b_side, 2, "b");
  return std::abs(weighted_gr_margin(space, eq.p, eq.a_side, eq.b_side));
}

}  // namespace metround
