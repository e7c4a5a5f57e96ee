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

#include "metround/roundness.hpp"

#include <algorithm>
#include <cmath>

#include "metround/error.hpp"

namespace metround {
namespace {

inline double pw(double d, double p) { return d == 0.0 ? 0.0 : std::pow(d, p); }

// Margin from a table of d^p values.
inline double margin_from(const Matrix& dp, const RoundnessQuad& q) {
  const auto [x00, x01, x11, x10] = q;
  auto e = [&](std::size_t i, std::size_t j) {
    return dp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };
  return e(x00, x11) + e(x01, x10) - (e(x00, x01) + e(x01, x11) + e(x11, x10) + e(x10, x00));
}

Matrix powered(const Matrix& d, double p) {
  Matrix out = d.array().pow(p).matrix();
  out.diagonal().setZero();
  return out;
}

}  // namespace

double roundness_margin(const FiniteMetricSpace& s, double p, const RoundnessQuad& q) {
  const auto [x00, x01, x11, x10] = q;
  return pw(s(x00, x11), p) + pw(s(x01, x10), p) -
         (pw(s(x00, x01), p) + pw(s(x01, x11), p) + pw(s(x11, x10), p) + pw(s(x10, x00), p));
}

std::vector<RoundnessQuad> roundness_quadruple_shapes(std::size_t points) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < points; ++u)
    for (std::size_t v = u; v < points; ++v) pairs.emplace_back(u, v);
  std::vector<RoundnessQuad> out;
  out.reserve(pairs.size() * (pairs.size() + 1) / 2);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    for (std::size_t j = i; j < pairs.size(); ++j)
      out.push_back({pairs[i].first, pairs[j].first, pairs[i].second, pairs[j].second});
  return out;
}

RoundnessCheck roundness_exponent_check(const FiniteMetricSpace& space, double p, std::optional<double> tol) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw Error(ErrorCode::InvalidArgument, "roundness exponents start at 1", {}, p);
  RoundnessCheck out;
  out.p = p;
  out.tol = tol.value_or(kDefaultRelativeTolerance * std::pow(space.max_distance(), p));
  const Matrix dp = powered(space.distances(), p);
  for (const auto& q : roundness_quadruple_shapes(space.size())) {
    const double m = margin_from(dp, q);
    if (m <= out.tol) continue;
    // Strict improvement keeps the first shape among equal margins.
    if (!out.witness || m > out.margin) {
      out.witness = q;
      out.margin = m;
    }
  }
  out.holds = !out.witness;
  return out;
}

RoundnessProfile roundness_profile(const FiniteMetricSpace& space, const RoundnessProfileOptions& opts) {
  if (!(opts.p_grid_max >= 1.0) || !(opts.grid_step > 0.0) || !(opts.refine_tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "roundness profile options out of range");

  RoundnessProfile prof;
  const auto steps = static_cast<std::size_t>(std::floor((opts.p_grid_max - 1.0) / opts.grid_step + 1e-9));
  for (std::size_t k = 0; k <= steps; ++k) prof.grid.push_back(1.0 + static_cast<double>(k) * opts.grid_step);
  if (prof.grid.back() < opts.p_grid_max) prof.grid.push_back(opts.p_grid_max);

  // Unit max distance: margins are then compared against an absolute slack.
  const Matrix unit = space.distances() / space.max_distance();
  constexpr double slack = 1e-12;
  auto unit_margin = [&](double p, const RoundnessQuad& q) {
    auto e = [&](std::size_t i, std::size_t j) {
      return pw(unit(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), p);
    };
    const auto [x00, x01, x11, x10] = q;
    return e(x00, x11) + e(x01, x10) - (e(x00, x01) + e(x01, x11) + e(x11, x10) + e(x10, x00));
  };
  std::vector<Matrix> table;
  table.reserve(prof.grid.size());
  for (double p : prof.grid) table.push_back(powered(unit, p));

  const auto shapes = roundness_quadruple_shapes(space.size());
  prof.records.reserve(shapes.size());
  prof.global_lower = opts.p_grid_max;
  prof.binding = shapes.front();
  for (const auto& q : shapes) {
    double sup = opts.p_grid_max;
    for (std::size_t g = 0; g < prof.grid.size(); ++g) {
      if (margin_from(table[g], q) <= slack) continue;
      if (g == 0) {
        sup = prof.grid[0];
        break;
      }
      double lo = prof.grid[g - 1];
      double hi = prof.grid[g];
      while (hi - lo > opts.refine_tol) {
        const double mid = 0.5 * (lo + hi);
        if (unit_margin(mid, q) <= slack)
          lo = mid;
        else
          hi = mid;
      }
      sup = lo;
      break;
    }
    prof.records.push_back({q, sup});
    if (sup < prof.global_lower) {
      prof.global_lower = sup;
      prof.binding = q;
    }
  }
  return prof;
}

bool is_infinite_roundness(const FiniteMetricSpace& space) { return classify(space).is_ultrametric; }

}  // namespace metround
