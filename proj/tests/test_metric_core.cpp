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

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "metround/error.hpp"
#include "metround/generators.hpp"
#include "metround/metric_space.hpp"
#include "support.hpp"

using namespace metround;

namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

template <typename F>
Error capture(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected metround::Error");
  return Error(ErrorCode::InvalidArgument, "unreachable");
}

// Four-point condition over every ordering of every 4-subset, with no
// pairing shortcut.
bool brute_force_additive(const FiniteMetricSpace& s, double tol) {
  const std::size_t n = s.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          const double s1 = s(a, b) + s(c, d);
          const double s2 = s(a, c) + s(b, d);
          const double s3 = s(a, d) + s(b, c);
          if (s1 > std::max(s2, s3) + tol) return false;
        }
  return true;
}

}  // namespace

TEST_CASE("validate_metric accepts the two-point space") {
  const auto s = validate_metric(mat({{0, 1}, {1, 0}}));
  CHECK(s.size() == 2);
  CHECK(s(0, 1) == 1.0);
  CHECK(s.labels() == std::vector<std::string>{"0", "1"});
  CHECK(s.max_distance() == 1.0);
}

TEST_CASE("validate_metric reports the triangle witness and slack") {
  const auto e = capture([] { validate_metric(mat({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}})); });
  CHECK(e.code() == ErrorCode::TriangleViolation);
  CHECK(e.indices() == std::vector<std::size_t>{0, 1, 2});
  CHECK(e.value() == doctest::Approx(1.0));
}

TEST_CASE("validate_metric accepts L_{3,2}") {
  const auto s = validate_metric(mat({{0, 1, 1}, {1, 0, 1.5}, {1, 1.5, 0}}));
  CHECK(s(1, 2) == 1.5);
}

TEST_CASE("validate_metric error paths") {
  CHECK(capture([] { validate_metric(Matrix::Zero(2, 3)); }).code() == ErrorCode::NotSquare);
  CHECK(capture([] { validate_metric(Matrix::Zero(1, 1)); }).code() == ErrorCode::TooFewPoints);
  CHECK(capture([] { validate_metric(mat({{0, NAN}, {NAN, 0}})); }).code() == ErrorCode::NonFiniteEntry);
  CHECK(capture([] { validate_metric(mat({{0, INFINITY}, {1, 0}})); }).code() == ErrorCode::NonFiniteEntry);

  const auto diag = capture([] { validate_metric(mat({{0, 1}, {1, 0.5}})); });
  CHECK(diag.code() == ErrorCode::NonzeroDiagonal);
  CHECK(diag.indices() == std::vector<std::size_t>{1});

  const auto asym = capture([] { validate_metric(mat({{0, 1, 1}, {1, 0, 1}, {1, 1.5, 0}})); });
  CHECK(asym.code() == ErrorCode::AsymmetricEntry);
  CHECK(asym.indices() == std::vector<std::size_t>{1, 2});

  const auto zero = capture([] { validate_metric(mat({{0, 1, 0}, {1, 0, 1}, {0, 1, 0}})); });
  CHECK(zero.code() == ErrorCode::NonpositiveOffDiagonal);
  CHECK(zero.indices() == std::vector<std::size_t>{0, 2});

  CHECK(capture([] { validate_metric(mat({{0, 1}, {1, 0}}), std::vector<std::string>{"a"}); }).code() ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("validate_metric cleans noise within tolerance") {
  const auto s = validate_metric(mat({{1e-12, 1}, {1 + 1e-12, 0}}));
  CHECK(s(0, 0) == 0.0);
  CHECK(s(0, 1) == s(1, 0));
  // Explicit tolerance makes the same matrix fail.
  CHECK(capture([] { validate_metric(mat({{0, 1}, {1 + 1e-6, 0}}), std::nullopt, 1e-9); }).code() ==
        ErrorCode::AsymmetricEntry);
}

TEST_CASE("classify: equilateral, L_{3,2} and C4") {
  const auto eq = validate_metric(mat({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  const auto r = classify(eq);
  CHECK(r.is_ultrametric);
  CHECK(r.is_additive);
  CHECK_FALSE(r.ultra_witness);

  const auto l32 = make_lbk(3, 2);
  const auto c = classify(l32);
  CHECK_FALSE(c.is_ultrametric);
  REQUIRE(c.ultra_witness);
  CHECK(*c.ultra_witness == Triple{1, 2, 0});
  CHECK(ultrametric_excess(l32, *c.ultra_witness) == doctest::Approx(0.5));
  CHECK(c.is_additive);

  const auto cyc = mrtest::c4();
  const auto k = classify(cyc);
  CHECK_FALSE(k.is_additive);
  REQUIRE(k.additive_witness);
  CHECK(*k.additive_witness == Quad{0, 2, 1, 3});
  CHECK(four_point_excess(cyc, *k.additive_witness) == doctest::Approx(2.0));
}

TEST_CASE("metric_transform") {
  const auto um = random_ultrametric(7, 11);
  for (double p : {0.3, 1.0, 2.5, 4.0}) CHECK(classify(metric_transform(um, p)).is_ultrametric);

  const auto l = make_lbk(3, 2);
  const auto same = metric_transform(l, 1.0);
  CHECK(same.distances() == l.distances());

  const auto line = validate_metric(mat({{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}));
  const auto e = capture([&] { metric_transform(line, 2.0); });
  CHECK(e.code() == ErrorCode::TransformNotMetric);
  CHECK(e.value() == 2.0);
  CHECK(e.indices().size() == 3);
  CHECK(capture([&] { metric_transform(line, 0.0); }).code() == ErrorCode::InvalidArgument);

  const auto sq = metric_transform(line, 0.5);
  CHECK(sq(0, 2) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("property: classify flags are permutation invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    FiniteMetricSpace s = trial % 3 == 0   ? random_ultrametric(n, rng())
                          : trial % 3 == 1 ? tree_path_metric(random_tree(n + 3, rng()))
                                           : mrtest::random_metric(n, rng);
    std::vector<std::size_t> order(s.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const auto a = classify(s);
    const auto b = classify(s.permuted(order));
    CHECK(a.is_ultrametric == b.is_ultrametric);
    CHECK(a.is_additive == b.is_additive);
  }
}

TEST_CASE("property: additive flag matches the brute-force four-point check") {
  std::mt19937_64 rng(19);
  int additive = 0;
  for (int trial = 0; trial < 80; ++trial) {
    FiniteMetricSpace s = trial % 2 ? tree_path_metric(random_tree(4 + rng() % 8, rng()))
                                    : mrtest::random_metric(4 + rng() % 6, rng);
    if (s.size() > 9) continue;
    const auto r = classify(s);
    CHECK(r.is_additive == brute_force_additive(s, r.tol));
    additive += r.is_additive;
  }
  CHECK(additive > 0);
}

TEST_CASE("property: ultrametricity survives transforms up to p = 4") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto um = random_ultrametric(3 + seed % 9, seed);
    for (double p : {0.1, 0.5, 1.5, 3.0, 4.0}) CHECK(classify(metric_transform(um, p)).is_ultrametric);
  }
}

TEST_CASE("permuted rejects a non-permutation") {
  const auto s = mrtest::c4();
  std::array<std::size_t, 4> bad{0, 0, 1, 2};
  CHECK_THROWS_AS(s.permuted(bad), Error);
  std::array<std::size_t, 4> rev{3, 2, 1, 0};
  const auto r = s.permuted(rev);
  CHECK(r(0, 1) == s(3, 2));
  CHECK(r.labels()[0] == "3");
}
