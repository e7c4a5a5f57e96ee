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

#include "metround/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "detail/spectral.hpp"
#include "metround/error.hpp"

namespace metround {

EuclideanEmbedding embed_euclidean(const FiniteMetricSpace& space, const EmbedOptions& opts) {
  if (!(opts.p >= 0.0 && opts.p <= 2.0))
    throw Error(ErrorCode::InvalidArgument, "embedding exponent must lie in [0, 2]", {}, opts.p);
  if (opts.base >= space.size()) throw Error(ErrorCode::InvalidArgument, "base index out of range", {opts.base});
  if (!(opts.rank_tol >= 0.0) || !(opts.spectral_tol >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "tolerances must be nonnegative");

  const Matrix a = detail::centered_form(detail::power_matrix(space.distances(), opts.p), opts.base);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  const Vector& ev = es.eigenvalues();
  const double lambda_max = ev.cwiseAbs().maxCoeff();
  const double tau = opts.spectral_tol * lambda_max;
  if (ev(0) < -tau)
    throw Error(ErrorCode::NotNegativeType,
                "A_p has eigenvalue " + std::to_string(ev(0)) + " at p = " + std::to_string(opts.p), {}, ev(0));

  const double cutoff = std::max(opts.rank_tol * lambda_max, tau);
  const auto n = a.rows();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index c = n - 1; c >= 0; --c)
    if (ev(c) > cutoff) kept.push_back(c);

  EuclideanEmbedding e;
  e.p = opts.p;
  e.base = opts.base;
  e.rank = kept.size();
  e.coords = Matrix::Zero(static_cast<Eigen::Index>(space.size()), static_cast<Eigen::Index>(kept.size()));
  e.spectrum.resize(static_cast<Eigen::Index>(kept.size()));
  for (std::size_t k = 0; k < kept.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    const double s = std::sqrt(ev(kept[k]));
    e.spectrum(col) = ev(kept[k]);
    for (Eigen::Index r = 0; r < n; ++r) {
      const auto row = static_cast<Eigen::Index>(detail::gram_row_point(std::size_t(r), opts.base));
      e.coords(row, col) = es.eigenvectors()(r, kept[k]) * s;
    }
  }
  e.residual = verify_isometry(e, space).max_error;
  return e;
}

IsometryCheck verify_isometry(const EuclideanEmbedding& embedding, const FiniteMetricSpace& space) {
  if (static_cast<std::size_t>(embedding.coords.rows()) != space.size())
    throw Error(ErrorCode::DimensionMismatch, "embedding has " + std::to_string(embedding.coords.rows()) +
                                                  " rows for a space of " + std::to_string(space.size()) +
                                                  " points");
  IsometryCheck out;
  const double half = 0.5 * embedding.p;
  for (std::size_t i = 0; i < space.size(); ++i)
    for (std::size_t j = i + 1; j < space.size(); ++j) {
      const double target = std::pow(space(i, j), half);
      const double got = (embedding.coords.row(static_cast<Eigen::Index>(i)) -
                          embedding.coords.row(static_cast<Eigen::Index>(j)))
                             .norm();
      const double err = std::abs(got - target);
      if (err > out.max_error) {
        out.max_error = err;
        out.pair = {i, j};
      }
    }
  return out;
}

}  // namespace metround
