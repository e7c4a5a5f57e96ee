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

#include "metround/metround.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "metround/embedding.hpp"
#include "metround/error.hpp"
#include "metround/generators.hpp"
#include "metround/metric_space.hpp"
#include "metround/negative_type.hpp"
#include "metround/polygonal.hpp"
#include "metround/roundness.hpp"

struct mr_space {
  metround::FiniteMetricSpace space;
};

struct mr_embedding {
  metround::EuclideanEmbedding embedding;
};

struct mr_config {
  double p = 0.0;
  std::vector<metround::WeightedPoint> sides[2];
  double value = 0.0;
  double aux = std::numeric_limits<double>::quiet_NaN();
};

struct mr_profile {
  metround::RoundnessProfile profile;
};

namespace {

thread_local mr_error_info g_last_error{};

mr_status map_code(metround::ErrorCode code) {
  using metround::ErrorCode;
  switch (code) {
    case ErrorCode::NotSquare: return MR_ERR_NOT_SQUARE;
    case ErrorCode::TooFewPoints: return MR_ERR_TOO_FEW_POINTS;
    case ErrorCode::NonFiniteEntry: return MR_ERR_NON_FINITE_ENTRY;
    case ErrorCode::AsymmetricEntry: return MR_ERR_ASYMMETRIC_ENTRY;
    case ErrorCode::NonzeroDiagonal: return MR_ERR_NONZERO_DIAGONAL;
    case ErrorCode::NonpositiveOffDiagonal: return MR_ERR_NONPOSITIVE_OFF_DIAGONAL;
    case ErrorCode::TriangleViolation: return MR_ERR_TRIANGLE_VIOLATION;
    case ErrorCode::TransformNotMetric: return MR_ERR_TRANSFORM_NOT_METRIC;
    case ErrorCode::InvalidArgument: return MR_ERR_INVALID_ARGUMENT;
    case ErrorCode::CapReachedNonUltrametric: return MR_ERR_CAP_REACHED_NON_ULTRAMETRIC;
    case ErrorCode::NotNegativeType: return MR_ERR_NOT_NEGATIVE_TYPE;
    case ErrorCode::NoKernelVector: return MR_ERR_NO_KERNEL_VECTOR;
    case ErrorCode::ParamOutOfRange: return MR_ERR_PARAM_OUT_OF_RANGE;
    case ErrorCode::TargetOutOfRange: return MR_ERR_TARGET_OUT_OF_RANGE;
    case ErrorCode::DisconnectedTree: return MR_ERR_DISCONNECTED_TREE;
    case ErrorCode::CycleDetected: return MR_ERR_CYCLE_DETECTED;
    case ErrorCode::DimensionMismatch: return MR_ERR_DIMENSION_MISMATCH;
    case ErrorCode::WeightSumInvalid: return MR_ERR_WEIGHT_SUM_INVALID;
    case ErrorCode::IndexOverlap: return MR_ERR_INDEX_OVERLAP;
  }
  return MR_ERR_INTERNAL;
}

mr_status fail(mr_status code, const std::string& message, const std::vector<std::size_t>& idx = {},
               double value = std::numeric_limits<double>::quiet_NaN()) {
  g_last_error = mr_error_info{};
  g_last_error.code = code;
  g_last_error.index_count = std::min<std::size_t>(idx.size(), 4);
  std::copy_n(idx.begin(), g_last_error.index_count, g_last_error.indices);
  g_last_error.value = value;
  std::strncpy(g_last_error.message, message.c_str(), sizeof(g_last_error.message) - 1);
  return code;
}

template <class F>
mr_status guarded(F&& body) {
  try {
    return body();
  } catch (const metround::Error& e) {
    return fail(map_code(e.code()), e.what(), e.indices(), e.value());
  } catch (const std::bad_alloc&) {
    return fail(MR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MR_ERR_INTERNAL, "unknown exception");
  }
}

mr_status null_arg(const char* what) { return fail(MR_ERR_INVALID_ARGUMENT, std::string(what) + " is NULL"); }

std::optional<double> opt_tol(double v) { return v < 0.0 ? std::nullopt : std::optional<double>(v); }

mr_space* wrap(metround::FiniteMetricSpace s) { return new mr_space{std::move(s)}; }

}  // namespace

extern "C" {

const char* mr_version(void) { return "1.0.0"; }

const char* mr_status_name(mr_status status) {
  switch (status) {
    case MR_OK: return "Ok";
    case MR_ERR_NOT_SQUARE: return "NotSquare";
    case MR_ERR_TOO_FEW_POINTS: return "TooFewPoints";
    case MR_ERR_NON_FINITE_ENTRY: return "NonFiniteEntry";
    case MR_ERR_ASYMMETRIC_ENTRY: return "AsymmetricEntry";
    case MR_ERR_NONZERO_DIAGONAL: return "NonzeroDiagonal";
    case MR_ERR_NONPOSITIVE_OFF_DIAGONAL: return "NonpositiveOffDiagonal";
    case MR_ERR_TRIANGLE_VIOLATION: return "TriangleViolation";
    case MR_ERR_TRANSFORM_NOT_METRIC: return "TransformNotMetric";
    case MR_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case MR_ERR_CAP_REACHED_NON_ULTRAMETRIC: return "CapReachedNonUltrametric";
    case MR_ERR_NOT_NEGATIVE_TYPE: return "NotNegativeType";
    case MR_ERR_NO_KERNEL_VECTOR: return "NoKernelVector";
    case MR_ERR_PARAM_OUT_OF_RANGE: return "ParamOutOfRange";
    case MR_ERR_TARGET_OUT_OF_RANGE: return "TargetOutOfRange";
    case MR_ERR_DISCONNECTED_TREE: return "DisconnectedTree";
    case MR_ERR_CYCLE_DETECTED: return "CycleDetected";
    case MR_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case MR_ERR_WEIGHT_SUM_INVALID: return "WeightSumInvalid";
    case MR_ERR_INDEX_OVERLAP: return "IndexOverlap";
    case MR_ERR_SINGULAR: return "Singular";
    case MR_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

void mr_last_error(mr_error_info* out) {
  if (out) *out = g_last_error;
}

mr_status mr_space_create(const double* matrix, size_t side, const char* const* labels, double tol_metric,
                          mr_space** out) {
  if (!matrix) return null_arg("matrix");
  if (!out) return null_arg("out");
  return guarded([&] {
    metround::Matrix m(static_cast<Eigen::Index>(side), static_cast<Eigen::Index>(side));
    for (size_t i = 0; i < side; ++i)
      for (size_t j = 0; j < side; ++j)
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = matrix[i * side + j];
    std::optional<std::vector<std::string>> names;
    if (labels) {
      names.emplace();
      for (size_t i = 0; i < side; ++i) names->emplace_back(labels[i] ? labels[i] : "");
    }
    *out = wrap(metround::validate_metric(m, std::move(names), opt_tol(tol_metric)));
    return MR_OK;
  });
}

void mr_space_destroy(mr_space* space) { delete space; }

size_t mr_space_size(const mr_space* space) { return space ? space->space.size() : 0; }

double mr_space_distance(const mr_space* space, size_t i, size_t j) {
  if (!space || i >= space->space.size() || j >= space->space.size()) return std::numeric_limits<double>::quiet_NaN();
  return space->space(i, j);
}

const char* mr_space_label(const mr_space* space, size_t i) {
  if (!space || i >= space->space.size()) return nullptr;
  return space->space.labels()[i].c_str();
}

void mr_space_copy_matrix(const mr_space* space, double* out) {
  if (!space || !out) return;
  const size_t n = space->space.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i * n + j] = space->space(i, j);
}

mr_status mr_classify(const mr_space* space, double tol, mr_classification* out) {
  if (!space) return null_arg("space");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto r = metround::classify(space->space, opt_tol(tol));
    mr_classification c{};
    c.is_ultrametric = r.is_ultrametric;
    c.is_additive = r.is_additive;
    c.tol = r.tol;
    if (r.ultra_witness) {
      c.has_ultra_witness = 1;
      std::copy(r.ultra_witness->begin(), r.ultra_witness->end(), c.ultra_witness);
    }
    if (r.additive_witness) {
      c.has_additive_witness = 1;
      std::copy(r.additive_witness->begin(), r.additive_witness->end(), c.additive_witness);
    }
    *out = c;
    return MR_OK;
  });
}

mr_status mr_metric_transform(const mr_space* space, double p, mr_space** out) {
  if (!space) return null_arg("space");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = wrap(metround::metric_transform(space->space, p));
    return MR_OK;
  });
}

mr_status mr_negtype_status(const mr_space* space, double p, double spectral_tol, size_t base,
                            mr_negtype_result* out, double* certificate) {
  if (!space) return null_arg("space");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto r = metround::negative_type_status(
        space->space, p, spectral_tol < 0.0 ? metround::kDefaultSpectralTolerance : spectral_tol, base);
    mr_negtype_result o{};
    o.p = r.p;
    o.status = r.status == metround::NegTypeStatus::Strict     ? MR_STRICT
               : r.status == metround::NegTypeStatus::Boundary ? MR_BOUNDARY
                                                               : MR_FAILS;
    o.min_eigenvalue = r.min_eigenvalue;
    o.tolerance = r.tolerance;
    o.has_certificate = r.certificate.has_value();
    if (certificate && r.certificate)
      std::copy(r.certificate->data(), r.certificate->data() + r.certificate->size(), certificate);
    *out = o;
    return MR_OK;
  });
}

mr_status mr_gram_matrix(const mr_space* space, double p, size_t base, double* entries, double* eigenvalues) {
  if (!space) return null_arg("space");
  return guarded([&] {
    const auto g = metround::gram_matrix(space->space, p, base);
    const auto n = g.entries.rows();
    if (entries)
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) entries[i * n + j] = g.entries(i, j);
    if (eigenvalues) std::copy(g.eigenvalues.data(), g.eigenvalues.data() + n, eigenvalues);
    return MR_OK;
  });
}

mr_status mr_sanchez_invariant(const mr_space* space, double p, double* value, double* rcond) {
  if (!space) return null_arg("space");
  if (!value) return null_arg("value");
  return guarded([&] {
    const auto r = metround::sanchez_invariant(space->space, p);
    if (rcond) *rcond = r.rcond;
    if (r.singular())
      return fail(MR_ERR_SINGULAR, "D_p is numerically singular (reciprocal condition " + std::to_string(r.rcond) + ")",
                  {}, r.rcond);
    *value = *r.value;
    return MR_OK;
  });
}

void mr_genround_default_options(mr_genround_options* opts) {
  if (!opts) return;
  const metround::GeneralizedRoundnessOptions d;
  opts->p_max = d.p_max;
  opts->bis_tol = d.bis_tol;
  opts->spectral_tol = d.spectral_tol;
}

mr_status mr_generalized_roundness(const mr_space* space, const mr_genround_options* opts, mr_genround_result* out) {
  if (!space) return null_arg("space");
  if (!out) return null_arg("out");
  return guarded([&] {
    metround::GeneralizedRoundnessOptions o;
    if (opts) {
      o.p_max = opts->p_max;
      o.bis_tol = opts->bis_tol;
      o.spectral_tol = opts->spectral_tol;
    }
    const auto r = metround::generalized_roundness(space->space, o);
    mr_genround_result g{};
    g.infinite = r.infinite;
    g.value = r.infinite ? std::numeric_limits<double>::infinity() : r.value;
    g.lo = r.lo;
    g.hi = r.hi;
    g.methods = r.methods;
    g.has_sanchez_root = r.sanchez_root.has_value();
    g.sanchez_root = r.sanchez_root.value_or(std::numeric_limits<double>::quiet_NaN());
    *out = g;
    return MR_OK;
  });
}

mr_status mr_gr_violation_search(const mr_space* space, double p, size_t max_size, size_t trials, uint64_t seed,
                                 mr_config** out) {
  if (!space) return null_arg("space");
  if (!out) return null_arg("out");
  return guarded([&] {
    auto v = metround::gr_violation_search(space->space, p, max_size, trials, seed);
    if (!v) {
      *out = nullptr;
      return MR_OK;
    }
    auto* c = new mr_config;
    c->p = v->p;
    c->sides[0] = std::move(v->a_side);
    c->sides[1] = std::move(v->b_side);
    c->value = v->margin;
    c->aux = v->count_margin.value_or(std::numeric_limits<double>::quiet_NaN());
    *out = c;
    return MR_OK;
  });
}

mr_status mr_deza_maehara_floor(long n, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = metround::deza_maehara_floor(n);
    return MR_OK;
  });
}

void mr_config_destroy(mr_config* config) { delete config; }
double mr_config_p(const mr_config* config) { return config ? config->p : std::numeric_limits<double>::quiet_NaN(); }

size_t mr_config_side_size(const mr_config* config, int side) {
  if (!config || side < 0 || side > 1) return 0;
  return config->sides[side].size();
}

void mr_config_entry(const mr_config* config, int side, size_t k, size_t* point, double* weight) {
  if (!config || side < 0 || side > 1 || k >= config->sides[side].size()) return;
  if (point) *point = config->sides[side][k].index;
  if (weight) *weight = config->sides[side][k].weight;
}

double mr_config_value(const mr_config* config) {
  return config ? config->value : std::numeric_limits<double>::quiet_NaN();
}

double mr_config_aux(const mr_config* config) { return config ? config->aux : std::numeric_limits<double>::quiet_NaN(); }

mr_status mr_find_polygonal_equality(const mr_space* space, double kernel_tol, mr_config** out) {
  if (!space) return null_arg("space");
  if (!out) return null_arg("out");
  return guarded([&] {
    auto eq = metround::find_polygonal_equality(space->space, opt_tol(kernel_tol));
    if (!eq) {
      *out = nullptr;
      return MR_OK;
    }
    auto* c = new mr_config;
    c->p = eq->p;
    c->sides[0] = std::move(eq->a_side);
    c->sides[1] = std::move(eq->b_side);
    c->value = eq->residual;
    c->aux = eq->tolerance;
    *out = c;
    return MR_OK;
  });
}

mr_status mr_verify_polygonal_equality(const mr_space* space, double p, const size_t* a_points,
                                       const double* a_weights, size_t a_count, const size_t* b_points,
                                       const double* b_weights, size_t b_count, double* residual) {
  if (!space) return null_arg("space");
  if (!residual) return null_arg("residual");
  if ((a_count && (!a_points || !a_weights)) || (b_count && (!b_points || !b_weights))) return null_arg("side");
  return guarded([&] {
    metround::PolygonalEquality eq;
    eq.p = p;
    for (size_t k = 0; k < a_count; ++k) eq.a_side.push_back({a_points[k], a_weights[k]});
    for (size_t k = 0; k < b_count; ++k) eq.b_side.push_back({b_points[k], b_weights[k]});
    *residual = metround::verify_polygonal_equality(space->space, eq);
    return MR_OK;
  });
}

mr_status mr_roundness_check_exponent(const mr_space* space, double p, double tol, mr_roundness_check* out) {
  if (!space) return null_arg("space");
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto r = metround::roundness_exponent_check(space->space, p, opt_tol(tol));
    mr_roundness_check c{};
    c.p = r.p;
    c.holds = r.holds;
    c.tol = r.tol;
    c.margin = r.margin;
    if (r.witness) {
      c.has_witness = 1;
      std::copy(r.witness->begin(), r.witness->end(), c.witness);
    }
    *out = c;
    return MR_OK;
  });
}

void mr_profile_default_options(mr_profile_options* opts) {
  if (!opts) return;
  const metround::RoundnessProfileOptions d;
  opts->p_grid_max = d.p_grid_max;
  opts->grid_step = d.grid_step;
  opts->refine_tol = d.refine_tol;
}

mr_status mr_roundness_profile(const mr_space* space, const mr_profile_options* opts, mr_profile** out) {
  if (!space) return null_arg("space");
  if (!out) return null_arg("out");
  return guarded([&] {
    metround::RoundnessProfileOptions o;
    if (opts) {
      o.p_grid_max = opts->p_grid_max;
      o.grid_step = opts->grid_step;
      o.refine_tol = opts->refine_tol;
    }
    *out = new mr_profile{metround::roundness_profile(space->space, o)};
    return MR_OK;
  });
}

void mr_profile_destroy(mr_profile* profile) { delete profile; }

double mr_profile_global_lower(const mr_profile* profile) {
  return profile ? profile->profile.global_lower : std::numeric_limits<double>::quiet_NaN();
}

void mr_profile_binding(const mr_profile* profile, size_t quad[4]) {
  if (profile && quad) std::copy(profile->profile.binding.begin(), profile->profile.binding.end(), quad);
}

size_t mr_profile_record_count(const mr_profile* profile) { return profile ? profile->profile.records.size() : 0; }

void mr_profile_record(const mr_profile* profile, size_t k, size_t quad[4], double* sup_contiguous) {
  if (!profile || k >= profile->profile.records.size()) return;
  const auto& rec = profile->profile.records[k];
  if (quad) std::copy(rec.quadruple.begin(), rec.quadruple.end(), quad);
  if (sup_contiguous) *sup_contiguous = rec.sup_contiguous;
}

size_t mr_profile_grid_size(const mr_profile* profile) { return profile ? profile->profile.grid.size() : 0; }

mr_status mr_is_infinite_roundness(const mr_space* space, int* out) {
  if (!space) return null_arg("space");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = metround::is_infinite_roundness(space->space);
    return MR_OK;
  });
}

mr_status mr_embed_euclidean(const mr_space* space, double p, size_t base, double rank_tol, double spectral_tol,
                             mr_embedding** out) {
  if (!space) return null_arg("space");
  if (!out) return null_arg("out");
  return guarded([&] {
    metround::EmbedOptions o;
    o.p = p;
    o.base = base;
    if (rank_tol >= 0.0) o.rank_tol = rank_tol;
    if (spectral_tol >= 0.0) o.spectral_tol = spectral_tol;
    *out = new mr_embedding{metround::embed_euclidean(space->space, o)};
    return MR_OK;
  });
}

mr_status mr_embedding_create(const double* coords, size_t rows, size_t cols, double p, mr_embedding** out) {
  if (!coords && rows != 0 && cols != 0) return null_arg("coords");
  if (!out) return null_arg("out");
  return guarded([&] {
    metround::EuclideanEmbedding e;
    e.p = p;
    e.rank = cols;
    e.coords.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j)
        e.coords(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = coords[i * cols + j];
    e.residual = std::numeric_limits<double>::quiet_NaN();
    *out = new mr_embedding{std::move(e)};
    return MR_OK;
  });
}

void mr_embedding_destroy(mr_embedding* embedding) { delete embedding; }
size_t mr_embedding_rows(const mr_embedding* e) { return e ? static_cast<size_t>(e->embedding.coords.rows()) : 0; }
size_t mr_embedding_rank(const mr_embedding* e) { return e ? e->embedding.rank : 0; }
double mr_embedding_p(const mr_embedding* e) { return e ? e->embedding.p : std::numeric_limits<double>::quiet_NaN(); }

double mr_embedding_residual(const mr_embedding* e) {
  return e ? e->embedding.residual : std::numeric_limits<double>::quiet_NaN();
}

void mr_embedding_copy_coords(const mr_embedding* e, double* out) {
  if (!e || !out) return;
  const auto& c = e->embedding.coords;
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = 0; j < c.cols(); ++j) out[i * c.cols() + j] = c(i, j);
}

mr_status mr_verify_isometry(const mr_embedding* embedding, const mr_space* space, double* max_error, size_t* i,
                             size_t* j) {
  if (!embedding) return null_arg("embedding");
  if (!space) return null_arg("space");
  if (!max_error) return null_arg("max_error");
  return guarded([&] {
    const auto r = metround::verify_isometry(embedding->embedding, space->space);
    *max_error = r.max_error;
    if (i) *i = r.pair.first;
    if (j) *j = r.pair.second;
    return MR_OK;
  });
}

mr_status mr_make_lbk(double b, long k, mr_space** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = wrap(metround::make_lbk(b, k));
    return MR_OK;
  });
}

mr_status mr_lbk_for_target(double target, mr_lbk_params* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    const auto prm = metround::lbk_for_target(target);
    *out = mr_lbk_params{prm.b, prm.k, prm.z, prm.closed_form_gr};
    return MR_OK;
  });
}

mr_status mr_random_ultrametric(size_t n, uint64_t seed, double height_lo, double height_hi, mr_space** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = wrap(metround::random_ultrametric(n, seed, {height_lo, height_hi}));
    return MR_OK;
  });
}

mr_status mr_tree_path_metric(size_t vertices, const size_t* edge_u, const size_t* edge_v, const double* edge_length,
                              size_t edge_count, const size_t* subset, size_t subset_count, mr_space** out) {
  if (!out) return null_arg("out");
  if (edge_count && (!edge_u || !edge_v || !edge_length)) return null_arg("edges");
  if (subset_count && !subset) return null_arg("subset");
  return guarded([&] {
    metround::WeightedTree t;
    t.vertices = vertices;
    for (size_t e = 0; e < edge_count; ++e) t.edges.push_back({edge_u[e], edge_v[e], edge_length[e]});
    if (subset) t.subset = std::vector<std::size_t>(subset, subset + subset_count);
    *out = wrap(metround::tree_path_metric(t));
    return MR_OK;
  });
}

}  // extern "C"
