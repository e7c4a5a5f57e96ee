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

#include <cmath>
#include <random>

#include "metround/error.hpp"
#include "metround/generators.hpp"
#include "metround/polygonal.hpp"
#include "support.hpp"

using namespace metround;

namespace {

PolygonalEquality c4_equality(double p) {
  PolygonalEquality eq;
  eq.p = p;
  eq.a_side = {{0, 0.5}, {2, 0.5}};
  eq.b_side = {{1, 0.5}, {3, 0.5}};
  return eq;
}

}  // namespace

TEST_CASE("find_polygonal_equality on C4") {
  const auto eq = find_polygonal_equality(mrtest::c4());
  REQUIRE(eq);
  CHECK(std::abs(eq->p - 1.0) < 1e-6);
  REQUIRE(eq->a_side.size() == 2);
  REQUIRE(eq->b_side.size() == 2);
  CHECK(eq->a_side[0].index == 0);
  CHECK(eq->a_side[1].index == 2);
  CHECK(eq->b_side[0].index == 1);
  CHECK(eq->b_side[1].index == 3);
  for (const auto& w : eq->a_side) CHECK(w.weight == doctest::Approx(0.5).epsilon(1e-12));
  for (const auto& w : eq->b_side) CHECK(w.weight == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(eq->residual < 1e-9);
}

TEST_CASE("verify_polygonal_equality examples") {
  const auto c = mrtest::c4();
  CHECK(verify_polygonal_equality(c, c4_equality(1.0)) < 1e-12);
  CHECK(verify_polygonal_equality(c, c4_equality(1.2)) ==
        doctest::Approx(0.25 * std::pow(2.0, 1.2) * 2.0 - 1.0));

  PolygonalEquality single{1.5, {{0, 1.0}}, {{2, 1.0}}, 0, 0};
  CHECK(verify_polygonal_equality(c, single) == doctest::Approx(std::pow(2.0, 1.5)));
}

TEST_CASE("verify_polygonal_equality errors") {
  const auto c = mrtest::c4();
  auto code_of = [&](const PolygonalEquality& eq) {
    try {
      verify_polygonal_equality(c, eq);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  auto eq = c4_equality(1.0);
  eq.a_side[0].weight = 0.6;
  CHECK(code_of(eq) == ErrorCode::WeightSumInvalid);
  eq = c4_equality(1.0);
  eq.b_side[1] = {0, 0.5};
  CHECK(code_of(eq) == ErrorCode::IndexOverlap);
  eq = c4_equality(1.0);
  eq.b_side = {};
  CHECK(code_of(eq) == ErrorCode::WeightSumInvalid);
  eq = c4_equality(1.0);
  eq.a_side = {{0, 1.5}, {2, -0.5}};
  CHECK(code_of(eq) == ErrorCode::WeightSumInvalid);
  eq = c4_equality(1.0);
  eq.a_side[1].index = 17;
  CHECK_THROWS_AS(verify_polygonal_equality(c, eq), Error);
}

TEST_CASE("ultrametrics admit no polygonal equality") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK_FALSE(find_polygonal_equality(random_ultrametric(3 + seed, seed)));
}

TEST_CASE("L_{3,2} polygonal equality at log_1.5(4)") {
  const auto l = make_lbk(3, 2);
  const auto eq = find_polygonal_equality(l);
  REQUIRE(eq);
  CHECK(std::abs(eq->p - 3.4190225827029095) < 1e-6);
  CHECK(eq->residual < 1e-8);
  CHECK(verify_polygonal_equality(l, *eq) < 1e-8);
}

TEST_CASE("property: equalities on random spaces") {
  std::mt19937_64 rng(66);
  for (int t = 0; t < 30; ++t) {
    const auto s = t % 3 == 0 ? tree_path_metric(random_tree(5 + t % 6, rng())) : mrtest::random_metric(3 + t % 6, rng);
    if (s.size() > 8 || classify(s).is_ultrametric) continue;
    const auto eq = find_polygonal_equality(s);
    REQUIRE(eq);
    CHECK(eq->residual <= 1e-7 * std::pow(s.max_distance(), eq->p));
    std::vector<int> owner(s.size(), 0);
    for (const auto& w : eq->a_side) {
      CHECK(w.weight > 0.0);
      CHECK(owner[w.index]++ == 0);
    }
    for (const auto& w : eq->b_side) {
      CHECK(w.weight > 0.0);
      CHECK(owner[w.index]++ == 0);
    }
    // Strict below the supremum.
    CHECK(weighted_gr_margin(s, eq->p - 0.01, eq->a_side, eq->b_side) < 0.0);
  }
}
