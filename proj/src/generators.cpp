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

#include "metround/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "metround/error.hpp"

namespace metround {

LbkParams lbk_params(double b, long k) {
  if (!(b > 1.0) || !std::isfinite(b)) throw Error(ErrorCode::ParamOutOfRange, "L_{b,k} needs b > 1", {}, b);
  if (k < 2) throw Error(ErrorCode::ParamOutOfRange, "L_{b,k} needs k >= 2", {}, static_cast<double>(k));
  LbkParams out;
  out.b = b;
  out.k = k;
  out.z = 2.0 * b / (b + 1.0);
  const double kd = static_cast<double>(k);
  out.closed_form_gr = std::log(2.0 * kd / (kd - 1.0)) / std::log(out.z);
  return out;
}

FiniteMetricSpace make_lbk(double b, long k) {
  const auto prm = lbk_params(b, k);
  const auto n = static_cast<Eigen::Index>(k + 1);
  Matrix d = Matrix::Constant(n, n, prm.z);
  d.row(0).setOnes();
  d.col(0).setOnes();
  d.diagonal().setZero();
  return validate_metric(d);
}

LbkParams lbk_for_target(double target) {
  if (!(target > 1.0) || !std::isfinite(target))
    throw Error(ErrorCode::TargetOutOfRange, "target generalized roundness must lie in (1, inf)", {}, target);
  // log2(2k/(k-1)) < target  <=>  k > 1 + 2 / (2^target - 2).
  const double bound = 1.0 + 2.0 / (std::exp2(target) - 2.0);
  long k = std::max<long>(2, static_cast<long>(std::floor(std::min(bound, 2.0 * kMaxLeafCount))));
  auto admissible = [&](long kk) {
    const double kd = static_cast<double>(kk);
    return std::log2(2.0 * kd / (kd - 1.0)) < target;
  };
  while (k > 2 && admissible(k - 1)) --k;
  while (k <= kMaxLeafCount && !admissible(k)) ++k;
  if (k > kMaxLeafCount)
    throw Error(ErrorCode::TargetOutOfRange, "target too close to 1 for k <= " + std::to_string(kMaxLeafCount), {},
                target);
  const double kd = static_cast<double>(k);
  const double z = std::pow(2.0 * kd / (kd - 1.0), 1.0 / target);
  return lbk_params(z / (2.0 - z), k);
}

FiniteMetricSpace dendrogram_metric(const Dendrogram& dendrogram) {
  const std::size_t n = dendrogram.leaves;
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "dendrogram needs at least 2 leaves");
  if (dendrogram.merges.size() != n - 1)
    throw Error(ErrorCode::InvalidArgument, "a binary dendrogram over n leaves has n-1 merges");

  std::vector<std::vector<std::size_t>> members(2 * n - 1);
  std::vector<bool> used(2 * n - 1, false);
  for (std::size_t i = 0; i < n; ++i) members[i] = {i};

  Matrix d = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  double previous = 0.0;
  for (std::size_t m = 0; m < n - 1; ++m) {
    const auto& mg = dendrogram.merges[m];
    if (!(mg.height > previous) || !std::isfinite(mg.height))
      throw Error(ErrorCode::InvalidArgument, "merge heights must be positive and strictly increasing", {m},
                  mg.height);
    const std::size_t limit = n + m;
    if (mg.left >= limit || mg.right >= limit || mg.left == mg.right || used[mg.left] || used[mg.right])
      throw Error(ErrorCode::InvalidArgument, "merge " + std::to_string(m) + " joins an invalid cluster", {m});
    for (auto x : members[mg.left])
      for (auto y : members[mg.right]) {
        d(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = mg.height;
        d(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = mg.height;
      }
    used[mg.left] = used[mg.right] = true;
    auto& into = members[limit];
    into = members[mg.left];
    into.insert(into.end(), members[mg.right].begin(), members[mg.right].end());
    previous = mg.height;
  }
  return validate_metric(d);
}

Dendrogram random_dendrogram(std::size_t n, std::uint64_t seed, std::pair<double, double> height_range) {
  auto [lo, hi] = height_range;
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 points");
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
    throw Error(ErrorCode::InvalidArgument, "height range must satisfy 0 < lo < hi");

  std::mt19937_64 rng(seed);
  const std::size_t merges = n - 1;
  const double sep = 1e-6 * (hi - lo);
  // Draw in a shortened range, then spread by i * sep: sorted, separated,
  // and still inside [lo, hi].
  const double span = (hi - lo) - static_cast<double>(merges - 1) * sep;
  if (!(span > 0.0)) throw Error(ErrorCode::InvalidArgument, "height range too narrow for the point count");
  std::uniform_real_distribution<double> unif(0.0, span);
  std::vector<double> heights(merges);
  for (auto& h : heights) h = unif(rng);
  std::sort(heights.begin(), heights.end());
  for (std::size_t i = 0; i < merges; ++i) heights[i] = lo + heights[i] + static_cast<double>(i) * sep;

  Dendrogram out;
  out.leaves = n;
  std::vector<std::size_t> active(n);
  std::iota(active.begin(), active.end(), std::size_t{0});
  for (std::size_t m = 0; m < merges; ++m) {
    std::uniform_int_distribution<std::size_t> pick(0, active.size() - 1);
    const std::size_t i = pick(rng);
    std::size_t j = std::uniform_int_distribution<std::size_t>(0, active.size() - 2)(rng);
    if (j >= i) ++j;
    out.merges.push_back({active[i], active[j], heights[m]});
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)));
    active.push_back(n + m);
  }
  return out;
}

FiniteMetricSpace random_ultrametric(std::size_t n, std::uint64_t seed, std::pair<double, double> height_range) {
  return dendrogram_metric(random_dendrogram(n, seed, height_range));
}

FiniteMetricSpace tree_path_metric(const WeightedTree& tree) {
  const std::size_t nv = tree.vertices;
  if (nv < 2) throw Error(ErrorCode::InvalidArgument, "tree needs at least 2 vertices");

  std::vector<std::size_t> parent(nv);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(nv);
  for (std::size_t e = 0; e < tree.edges.size(); ++e) {
    const auto& ed = tree.edges[e];
    if (ed.u >= nv || ed.v >= nv)
      throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(e) + " has an endpoint out of range", {e});
    if (!(ed.length > 0.0) || !std::isfinite(ed.length))
      throw Error(ErrorCode::InvalidArgument, "edge " + std::to_string(e) + " needs a positive length", {e},
                  ed.length);
    const auto ru = find(ed.u);
    const auto rv = find(ed.v);
    if (ru == rv) throw Error(ErrorCode::CycleDetected, "edge " + std::to_string(e) + " closes a cycle", {ed.u, ed.v});
    parent[ru] = rv;
    adj[ed.u].emplace_back(ed.v, ed.length);
    adj[ed.v].emplace_back(ed.u, ed.length);
  }
  for (std::size_t v = 1; v < nv; ++v)
    if (find(v) != find(0))
      throw Error(ErrorCode::DisconnectedTree, "vertex " + std::to_string(v) + " is not connected to vertex 0", {v});

  std::vector<std::size_t> subset;
  if (tree.subset) {
    subset = *tree.subset;
    std::vector<bool> seen(nv, false);
    for (auto v : subset) {
      if (v >= nv || seen[v]) throw Error(ErrorCode::InvalidArgument, "subset entries must be distinct vertices", {v});
      seen[v] = true;
    }
  } else {
    for (std::size_t v = 0; v < nv; ++v)
      if (adj[v].size() == 1) subset.push_back(v);
  }
  if (subset.size() < 2) throw Error(ErrorCode::InvalidArgument, "subset needs at least 2 vertices");

  const auto m = static_cast<Eigen::Index>(subset.size());
  Matrix d = Matrix::Zero(m, m);
  std::vector<double> dist(nv);
  std::vector<std::size_t> stack;
  for (Eigen::Index i = 0; i < m; ++i) {
    std::fill(dist.begin(), dist.end(), -1.0);
    const auto src = subset[static_cast<std::size_t>(i)];
    dist[src] = 0.0;
    stack.assign(1, src);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      for (auto [w, len] : adj[v])
        if (dist[w] < 0.0) {
          dist[w] = dist[v] + len;
          stack.push_back(w);
        }
    }
    for (Eigen::Index j = 0; j < m; ++j) d(i, j) = dist[subset[static_cast<std::size_t>(j)]];
  }
  // Path sums accumulate in different orders from the two ends.
  d = 0.5 * (d + d.transpose()).eval();

  std::vector<std::string> labels;
  for (auto v : subset) labels.push_back(std::to_string(v));
  return validate_metric(d, std::move(labels));
}

WeightedTree random_tree(std::size_t vertices, std::uint64_t seed) {
  if (vertices < 2) throw Error(ErrorCode::InvalidArgument, "tree needs at least 2 vertices");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> len(0.5, 1.5);
  WeightedTree t;
  t.vertices = vertices;
  for (std::size_t v = 1; v < vertices; ++v) {
    const std::size_t u = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    t.edges.push_back({u, v, len(rng)});
  }
  return t;
}

WeightedTree complete_binary_tree(std::size_t depth) {
  WeightedTree t;
  t.vertices = (std::size_t{2} << depth) - 1;
  for (std::size_t v = 1; v < t.vertices; ++v) t.edges.push_back({(v - 1) / 2, v, 1.0});
  std::vector<std::size_t> all(t.vertices);
  std::iota(all.begin(), all.end(), std::size_t{0});
  t.subset = std::move(all);
  return t;
}

}  // namespace metround
