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

#include "doctest.h"

#include <random>

#include "metround/embedding.hpp"
#include "metround/error.hpp"
#include "metround/generators.hpp"
#include "metround/negative_type.hpp"
#include "support.hpp"

using namespace metround;

namespace {

FiniteMetricSpace triple(double a, double b, double c) {
  Matrix d(3, 3);
  d << 0, a, b, a, 0, c, b, c, 0;
  return validate_metric(d);
}

Matrix pairwise(const Matrix& x) {
  Matrix d = Matrix::Zero(x.rows(), x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.rows(); ++j) d(i, j) = (x.row(i) - x.row(j)).norm();
  return d;
}

}  // namespace

TEST_CASE("embed_euclidean examples") {
  const auto eq = embed_euclidean(triple(1, 1, 1));
  CHECK(eq.rank == 2);
  CHECK(eq.residual < 1e-12);
  CHECK(eq.coords.row(0).norm() == 0.0);
  const Matrix pd = pairwise(eq.coords);
  CHECK(pd(0, 1) == doctest::Approx(1.0));
  CHECK(pd(1, 2) == doctest::Approx(1.0));

  const auto line = embed_euclidean(triple(1, 2, 1));
  CHECK(line.rank == 1);
  CHECK(line.residual < 1e-12);
  CHECK(std::abs(line.coords(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(line.coords(2, 0)) == doctest::Approx(2.0));
  CHECK(line.coords(1, 0) * line.coords(2, 0) > 0.0);

  const auto um = embed_euclidean(random_ultrametric(9, 42));
  CHECK(um.rank == 8);

  Matrix d(2, 2);
  d << 0, 2, 2, 0;
  const auto seg = embed_euclidean(validate_metric(d));
  CHECK(seg.rank == 1);
  CHECK(verify_isometry(seg, validate_metric(d)).max_error == 0.0);
}

TEST_CASE("embed_euclidean errors") {
  const auto c = mrtest::c4();
  try {
    embed_euclidean(c, {.p = 2.0});
    FAIL("expected NotNegativeType");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNegativeType);
  }
  CHECK_THROWS_AS(embed_euclidean(c, {.p = 2.5}), Error);
  CHECK_THROWS_AS(embed_euclidean(c, {.p = -0.1}), Error);
  CHECK_THROWS_AS(embed_euclidean(c, {.p = 1.0, .base = 9}), Error);
  const auto ok = embed_euclidean(c, {.p = 1.0});
  CHECK(ok.rank == 2);
  CHECK(ok.residual < 1e-8);
}

TEST_CASE("verify_isometry detects perturbation and dimension mismatch") {
  const auto s = triple(1, 1, 1);
  auto e = embed_euclidean(s);
  CHECK(verify_isometry(e, s).max_error < 1e-12);
  e.coords(2, 0) += 1e-3;
  const auto chk = verify_isometry(e, s);
  CHECK(chk.max_error >= 5e-4);
  CHECK((chk.pair.first == 2 || chk.pair.second == 2));

  try {
    verify_isometry(e, mrtest::c4());
    FAIL("expected DimensionMismatch");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("property: round trip reproduces d^{p/2}") {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 40; ++t) {
    const auto s = t % 3 == 0 ? random_ultrametric(3 + t % 8, rng())
                   : t % 3 == 1 ? tree_path_metric(random_tree(5 + t % 6, rng()))
                                : mrtest::random_euclidean(3 + t % 6, 3, rng);
    const double p = t % 3 == 2 ? 2.0 : 1.0;
    const auto e = embed_euclidean(s, {.p = p});
    const auto back = validate_metric(pairwise(e.coords));
    const auto ref = metric_transform(s, p / 2.0);
    const double scale = ref.max_distance();
    CHECK((back.distances() - ref.distances()).cwiseAbs().maxCoeff() <= 1e-8 * scale);
  }
}

TEST_CASE("property: rank is full exactly when the status is Strict") {
  std::mt19937_64 rng(8);
  int strict = 0;
  int other = 0;
  for (int t = 0; t < 60; ++t) {
    FiniteMetricSpace s = t % 4 == 0   ? random_ultrametric(3 + t % 9, rng())
                          : t % 4 == 1 ? tree_path_metric(random_tree(4 + t % 7, rng()))
                          : t % 4 == 2 ? mrtest::random_euclidean(4 + t % 5, 2, rng)
                                       : mrtest::c4();
    const double p = t % 4 == 3 ? 1.0 : 2.0;
    const auto st = negative_type_status(s, p, 1e-10);
    if (st.status == NegTypeStatus::Fails) continue;
    const auto e = embed_euclidean(s, {.p = p, .rank_tol = 1e-10, .spectral_tol = 1e-10});
    CHECK((e.rank == s.size() - 1) == (st.status == NegTypeStatus::Strict));
    (st.status == NegTypeStatus::Strict ? strict : other)++;
  }
  CHECK(strict > 0);
  CHECK(other > 0);
}

TEST_CASE("property: rank and residual do not depend on the base point") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 15; ++t) {
    const auto s = t % 2 ? random_ultrametric(4 + t % 5, rng()) : mrtest::random_euclidean(4 + t % 4, 2, rng);
    const auto ref = embed_euclidean(s);
    for (std::size_t b = 1; b < s.size(); ++b) {
      const auto e = embed_euclidean(s, {.p = 2.0, .base = b});
      CHECK(e.rank == ref.rank);
      CHECK(std::abs(e.residual - ref.residual) <= 1e-10);
      CHECK(e.coords.row(static_cast<Eigen::Index>(b)).norm() == 0.0);
    }
  }
}

TEST_CASE("property: every space embeds at the floor exponent") {
  std::mt19937_64 rng(91);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + t % 7;
    const auto s = mrtest::random_metric(n + 1, rng);
    const auto e = embed_euclidean(s, {.p = deza_maehara_floor(static_cast<long>(n))});
    CHECK(e.residual < 1e-8);
  }
}
