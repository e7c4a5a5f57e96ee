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
#include <utility>
#include <vector>

#include "metround/metric_space.hpp"

namespace metround {

/// Parameters of the star leaf metric L_{b,k}: one leaf at distance 1 from k
/// leaves that are mutually at distance z = 2b/(b+1).
struct LbkParams {
  double b = 0.0;
  long k = 0;
  double z = 0.0;
  /// log_z(2k/(k-1)), the generalized roundness of L_{b,k}.
  double closed_form_gr = 0.0;
};

/// Largest k accepted by lbk_for_target.
inline constexpr long kMaxLeafCount = 1'000'000;

LbkParams lbk_params(double b, long k);

/// L_{b,k}: point 0 is the leaf on the short edge 1/(b+1), points 1..k sit on
/// the edges of length b/(b+1).
FiniteMetricSpace make_lbk(double b, long k);

/// Smallest k >= 2 with log2(2k/(k-1)) < target, then z = (2k/(k-1))^{1/target}
/// and b = z/(2-z).
LbkParams lbk_for_target(double target);

/// Agglomerative merge record. Clusters 0..leaves-1 are the points; merge i
/// creates cluster leaves+i.
struct Merge {
  std::size_t left = 0;
  std::size_t right = 0;
  double height = 0.0;
};

struct Dendrogram {
  std::size_t leaves = 0;
  std::vector<Merge> merges;
};

/// Distance between two points = height of the merge that first joins them.
/// Heights must be positive and strictly increasing and the merges must form
/// a single binary hierarchy.
FiniteMetricSpace dendrogram_metric(const Dendrogram& dendrogram);

/// Random binary hierarchy over n points with heights in [lo, hi] separated by
/// at least 1e-6 * (hi - lo).
Dendrogram random_dendrogram(std::size_t n, std::uint64_t seed, std::pair<double, double> height_range = {1.0, 2.0});

FiniteMetricSpace random_ultrametric(std::size_t n, std::uint64_t seed,
                                     std::pair<double, double> height_range = {1.0, 2.0});

struct TreeEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double length = 0.0;
};

struct WeightedTree {
  std::size_t vertices = 0;
  std::vector<TreeEdge> edges;
  /// Vertices kept in the metric; defaults to the leaves.
  std::optional<std::vector<std::size_t>> subset;
};

/// Path-length metric of the tree restricted to the subset. Labels are the
/// vertex numbers.
FiniteMetricSpace tree_path_metric(const WeightedTree& tree);

/// Uniform attachment: vertex i joins a uniformly chosen earlier vertex with
/// an edge length uniform in [0.5, 1.5].
WeightedTree random_tree(std::size_t vertices, std::uint64_t seed);

/// Complete binary tree of the given depth (2^{depth+1} - 1 vertices, heap
/// numbering) with unit edges and every vertex in the subset.
WeightedTree complete_binary_tree(std::size_t depth);

}  // namespace metround
