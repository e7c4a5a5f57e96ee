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

#include "metround/negative_type.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <lapacke.h>

#include "detail/spectral.hpp"
#include "metround/error.hpp"

namespace metround {
namespace detail {

Matrix power_matrix(const Matrix& dist, double p) {
  Matrix dp = dist.array().pow(p).matrix();
  dp.diagonal().setZero();
  return dp;
}

Matrix centered_form(const Matrix& dp, std::size_t base) {
  const auto n = dp.rows() - 1;
  const auto b = static_cast<Eigen::Index>(base);
  Matrix a(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const auto j = static_cast<Eigen::Index>(gram_row_point(std::size_t(r), base));
    for (Eigen::Index c = r; c < n; ++c) {
      const auto k = static_cast<Eigen::Index>(gram_row_point(std::size_t(c), base));
      const double v = 0.5 * (dp(b, j) + dp(b, k) - dp(j, k));
      a(r, c) = v;
      a(c, r) = v;
    }
  }
  return a;
}

NegTypeResult assess(const Matrix& dist, double p, double spectral_tol, std::size_t base, bool want_vectors) {
  const Matrix a = centered_form(power_matrix(dist, p), base);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  const Vector& ev = es.eigenvalues();

  NegTypeResult r;
  r.p = p;
  r.base = base;
  r.min_eigenvalue = ev(0);
  r.max_abs_eigenvalue = ev.cwiseAbs().maxCoeff();
  r.tolerance = spectral_tol * r.max_abs_eigenvalue;
  if (r.min_eigenvalue > r.tolerance)
    r.status = NegTypeStatus::Strict;
  else if (r.min_eigenvalue >= -r.tolerance)
    r.status = NegTypeStatus::Boundary;
  else
    r.status = NegTypeStatus::Fails;
  if (want_vectors && r.status != NegTypeStatus::Strict) r.certificate = es.eigenvectors().col(0);
  return r;
}

double min_eigenvalue(const Matrix& dist, double p) {
  const Matrix a = centered_form(power_matrix(dist, p), 0);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double polish_kernel_exponent(const Matrix& dist, double lo, double hi) {
  double a = lo;
  double b = hi;
  double fb = min_eigenvalue(dist, b);
  if (fb > 0.0) return b;
  double fa = min_eigenvalue(dist, a);
  // Inside the tolerance band lo may already sit just past the crossing.
  double step = std::max(hi - lo, 1e-12);
  while (fa < 0.0 && a > 0.0) {
    b = a;
    a = std::max(0.0, a - step);
    step *= 2.0;
    fa = min_eigenvalue(dist, a);
  }
  if (fa < 0.0) return a;
  for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * b; ++it) {
    const double m = 0.5 * (a + b);
    if (min_eigenvalue(dist, m) >= 0.0)
      a = m;
    else
      b = m;
  }
  return 0.5 * (a + b);
}

SanchezResult sanchez_from_pdist(const Matrix& dp) {
  const auto n = static_cast<lapack_int>(dp.rows());
  Matrix lu = dp;  // column-major, overwritten by the factorization
  std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
  SanchezResult out;

  const double anorm = LAPACKE_dlansy(LAPACK_COL_MAJOR, '1', 'L', n, lu.data(), n);
  if (LAPACKE_dsytrf(LAPACK_COL_MAJOR, 'L', n, lu.data(), n, ipiv.data()) != 0) return out;
  double rcond = 0.0;
  if (LAPACKE_dsycon(LAPACK_COL_MAJOR, 'L', n, lu.data(), n, ipiv.data(), anorm, &rcond) != 0) return out;
  out.rcond = rcond;
  if (!(rcond >= 1e-12)) return out;

  Vector rhs = Vector::Ones(n);
  if (LAPACKE_dsytrs(LAPACK_COL_MAJOR, 'L', n, 1, lu.data(), n, ipiv.data(), rhs.data(), n) != 0) return out;
  out.value = rhs.sum();
  return out;
}

}  // namespace detail

namespace {

void require_exponent(double p) {
  if (!(p >= 0.0) || !std::isfinite(p))
    throw Error(ErrorCode::InvalidArgument, "exponent must be finite and nonnegative", {}, p);
}

void require_base(const FiniteMetricSpace& space, std::size_t base) {
  if (base >= space.size())
    throw Error(ErrorCode::InvalidArgument, "base index " + std::to_string(base) + " out of range", {base});
}

}  // namespace

PDistanceMatrix p_distance_matrix(const FiniteMetricSpace& space, double p) {
  require_exponent(p);
  return {p, detail::power_matrix(space.distances(), p)};
}

GramMatrix gram_matrix(const FiniteMetricSpace& space, double p, std::size_t base) {
  require_exponent(p);
  require_base(space, base);
  GramMatrix g;
  g.p = p;
  g.base = base;
  for (std::size_t r = 0; r + 1 < space.size(); ++r) g.points.push_back(detail::gram_row_point(r, base));
  g.entries = detail::centered_form(detail::power_matrix(space.distances(), p), base);
  Eigen::SelfAdjointEigenSolver<Matrix> es(g.entries);
  g.eigenvalues = es.eigenvalues();
  g.eigenvectors = es.eigenvectors();
  return g;
}

NegTypeResult negative_type_status(const FiniteMetricSpace& space, double p, double spectral_tol,
                                   std::size_t base) {
  require_exponent(p);
  require_base(space, base);
  if (!(spectral_tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "spectral tolerance must be nonnegative");
  return detail::assess(space.distances(), p, spectral_tol, base, true);
}

SanchezResult sanchez_invariant(const FiniteMetricSpace& space, double p) {
  require_exponent(p);
  return detail::sanchez_from_pdist(detail::power_matrix(space.distances(), p));
}

GeneralizedRoundnessResult generalized_roundness(const FiniteMetricSpace& space,
                                                 const GeneralizedRoundnessOptions& opts) {
  if (!(opts.p_max >= 1.0) || !(opts.bis_tol > 0.0) || !(opts.spectral_tol >= 0.0))
    throw Error(ErrorCode::InvalidArgument, "generalized roundness options out of range");

  GeneralizedRoundnessResult res;
  const auto cls = classify(space);
  if (cls.is_ultrametric) {
    res.infinite = true;
    res.methods = kUltrametricShortcut;
    return res;
  }

  // Scaling d by c scales A_p by c^p, so definiteness is unchanged; working
  // with max distance 1 keeps d^p bounded for large p.
  const Matrix unit = space.distances() / space.max_distance();
  auto holds = [&](double p) {
    ++res.probes;
    return detail::assess(unit, p, opts.spectral_tol, 0, false).status != NegTypeStatus::Fails;
  };

  double lo = 0.0;
  double hi = 1.0;
  while (holds(hi)) {
    lo = hi;
    if (hi >= opts.p_max) {
      const auto at_cap = detail::assess(unit, opts.p_max, opts.spectral_tol, 0, false);
      std::ostringstream msg;
      msg << "p-negative type still holds at p_max = " << opts.p_max
          << " (min eigenvalue " << at_cap.min_eigenvalue << ", tolerance " << at_cap.tolerance
          << ") on a space that is not ultrametric; ultrametric witness (" << (*cls.ultra_witness)[0] << ','
          << (*cls.ultra_witness)[1] << ',' << (*cls.ultra_witness)[2] << ')';
      if (cls.additive_witness) {
        const auto& q = *cls.additive_witness;
        msg << ", four-point witness (" << q[0] << ',' << q[1] << ',' << q[2] << ',' << q[3] << ')';
      }
      std::vector<std::size_t> idx(cls.ultra_witness->begin(), cls.ultra_witness->end());
      throw Error(ErrorCode::CapReachedNonUltrametric, msg.str(), idx, at_cap.min_eigenvalue);
    }
    hi = std::min(2.0 * hi, opts.p_max);
  }

  while (hi - lo > opts.bis_tol) {
    const double mid = 0.5 * (lo + hi);
    if (holds(mid))
      lo = mid;
    else
      hi = mid;
  }
  res.lo = lo;
  res.hi = hi;
  res.value = 0.5 * (lo + hi);
  res.methods = kSpectralBisection;

  // Cross-check: <D_p^{-1} 1, 1> changes sign where A_p becomes singular.
  const double a0 = std::max(0.0, lo - 10.0 * opts.bis_tol);
  const auto sa = detail::sanchez_from_pdist(detail::power_matrix(unit, a0));
  const auto sb = detail::sanchez_from_pdist(detail::power_matrix(unit, hi));
  if (!sa.singular() && !sb.singular() && (*sa.value > 0.0) != (*sb.value > 0.0)) {
    double a = a0;
    double b = hi;
    const bool a_positive = *sa.value > 0.0;
    bool ok = true;
    while (b - a > 1e-3 * opts.bis_tol && ok) {
      const double m = 0.5 * (a + b);
      const auto sm = detail::sanchez_from_pdist(detail::power_matrix(unit, m));
      if (sm.singular()) {
        ok = false;
      } else if ((*sm.value > 0.0) == a_positive) {
        a = m;
      } else {
        b = m;
      }
    }
    if (ok) {
      res.sanchez_root = 0.5 * (a + b);
      if (std::abs(*res.sanchez_root - res.value) <= 10.0 * opts.bis_tol) res.methods |= kSanchezRoot;
    }
  }
  return res;
}

Vector augment_at_base(const Vector& eta, std::size_t base) {
  const auto n = eta.size();
  if (base > static_cast<std::size_t>(n)) throw Error(ErrorCode::InvalidArgument, "base index out of range");
  Vector out(n + 1);
  out(static_cast<Eigen::Index>(base)) = -eta.sum();
  for (Eigen::Index r = 0; r < n; ++r)
    out(static_cast<Eigen::Index>(detail::gram_row_point(std::size_t(r), base))) = eta(r);
  return out;
}

double weighted_gr_margin(const FiniteMetricSpace& space, double p, std::span<const WeightedPoint> a_side,
                          std::span<const WeightedPoint> b_side) {
  require_exponent(p);
  auto dp = [&](std::size_t i, std::size_t j) { return i == j ? 0.0 : std::pow(space(i, j), p); };
  double lhs = 0.0;
  for (std::size_t x = 0; x < a_side.size(); ++x)
    for (std::size_t y = x + 1; y < a_side.size(); ++y)
      lhs += a_side[x].weight * a_side[y].weight * dp(a_side[x].index, a_side[y].index);
  for (std::size_t x = 0; x < b_side.size(); ++x)
    for (std::size_t y = x + 1; y < b_side.size(); ++y)
      lhs += b_side[x].weight * b_side[y].weight * dp(b_side[x].index, b_side[y].index);
  double rhs = 0.0;
  for (const auto& a : a_side)
    for (const auto& b : b_side) rhs += a.weight * b.weight * dp(a.index, b.index);
  return lhs - rhs;
}

namespace {

// Advances a non-decreasing index sequence over [0, n); false when exhausted.
bool next_multiset(std::vector<std::size_t>& s, std::size_t n) {
  for (std::size_t i = s.size(); i-- > 0;) {
    if (s[i] + 1 < n) {
      ++s[i];
      for (std::size_t j = i + 1; j < s.size(); ++j) s[j] = s[i];
      return true;
    }
  }
  return false;
}

std::vector<WeightedPoint> collapse(const std::vector<std::size_t>& multiset) {
  std::vector<WeightedPoint> out;
  const double w = 1.0 / static_cast<double>(multiset.size());
  for (auto i : multiset) {
    if (!out.empty() && out.back().index == i)
      out.back().weight += w;
    else
      out.push_back({i, w});
  }
  return out;
}

bool disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  // Both sorted.
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return true;
}

// Exponentiated-gradient ascent of the weighted margin with the two
// supports fixed; weights stay positive and each side keeps unit sum.
void ascend_weights(const Matrix& dp, std::vector<WeightedPoint>& a, std::vector<WeightedPoint>& b) {
  const double step = 1.0 / std::max(dp.maxCoeff(), std::numeric_limits<double>::min());
  auto d = [&](std::size_t i, std::size_t j) {
    return dp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };
  std::vector<double> ga(a.size());
  std::vector<double> gb(b.size());
  auto update = [&](std::vector<WeightedPoint>& side, const std::vector<double>& g) {
    const double top = *std::max_element(g.begin(), g.end());
    double sum = 0.0;
    for (std::size_t i = 0; i < side.size(); ++i) {
      side[i].weight *= std::exp(step * (g[i] - top));
      sum += side[i].weight;
    }
    for (auto& w : side) w.weight /= sum;
  };
  for (int it = 0; it < 60; ++it) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      double g = 0.0;
      for (const auto& x : a) g += x.weight * d(a[i].index, x.index);
      for (const auto& y : b) g -= y.weight * d(a[i].index, y.index);
      ga[i] = g;
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
      double g = 0.0;
      for (const auto& y : b) g += y.weight * d(b[i].index, y.index);
      for (const auto& x : a) g -= x.weight * d(b[i].index, x.index);
      gb[i] = g;
    }
    update(a, ga);
    update(b, gb);
  }
}

}  // namespace

std::optional<Violation> gr_violation_search(const FiniteMetricSpace& space, double p, std::size_t max_size,
                                             std::size_t trials, std::uint64_t seed) {
  require_exponent(p);
  const std::size_t n = space.size();
  const Matrix dp = detail::power_matrix(space.distances(), p);
  // margin = -eta^T A_p eta, so margin > tau * |eta_*|^2 forces an eigenvalue
  // below -tau: every reported violation agrees with a Fails status.
  const double tau = negative_type_status(space, p).tolerance;
  const double tie = 1e-12 * dp.maxCoeff();

  std::optional<Violation> best;
  auto consider = [&](std::vector<WeightedPoint> a, std::vector<WeightedPoint> b, std::optional<double> count) {
    const double m = weighted_gr_margin(space, p, a, b);
    double norm2 = 0.0;
    for (const auto& w : a) norm2 += w.weight * w.weight;
    for (const auto& w : b) norm2 += w.weight * w.weight;
    if (m <= tau * norm2) return;
    if (best && m <= best->margin + tie) return;
    best = Violation{p, std::move(a), std::move(b), m, count};
  };

  // Exhaustive part: multisets a <= b (the inequality is symmetric in the two
  // sides) with disjoint supports; shared points cancel.
  for (std::size_t m = 1; m <= max_size; ++m) {
    std::vector<std::size_t> a(m, 0);
    do {
      std::vector<std::size_t> b = a;
      do {
        if (!disjoint(a, b)) continue;
        auto wa = collapse(a);
        auto wb = collapse(b);
        const double scale = static_cast<double>(m * m);
        const double count = weighted_gr_margin(space, p, wa, wb) * scale;
        consider(std::move(wa), std::move(wb), count);
      } while (next_multiset(b, n));
    } while (next_multiset(a, n));
  }

  if (trials > 0 && n >= 2) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::exponential_distribution<double> expo(1.0);
    for (std::size_t t = 0; t < trials; ++t) {
      std::shuffle(order.begin(), order.end(), rng);
      const std::size_t s = std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
      const std::size_t u = std::uniform_int_distribution<std::size_t>(1, n - s)(rng);
      std::vector<WeightedPoint> a;
      std::vector<WeightedPoint> b;
      double sa = 0.0;
      double sb = 0.0;
      for (std::size_t i = 0; i < s; ++i) {
        a.push_back({order[i], expo(rng)});
        sa += a.back().weight;
      }
      for (std::size_t i = s; i < s + u; ++i) {
        b.push_back({order[i], expo(rng)});
        sb += b.back().weight;
      }
      for (auto& w : a) w.weight /= sa;
      for (auto& w : b) w.weight /= sb;
      ascend_weights(dp, a, b);
      auto by_index = [](const WeightedPoint& x, const WeightedPoint& y) { return x.index < y.index; };
      std::sort(a.begin(), a.end(), by_index);
      std::sort(b.begin(), b.end(), by_index);
      consider(std::move(a), std::move(b), std::nullopt);
    }
  }
  return best;
}

double deza_maehara_floor(long n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "floor needs n >= 2", {}, static_cast<double>(n));
  return std::log2(1.0 + 1.0 / static_cast<double>(n));
}

}  // namespace metround
