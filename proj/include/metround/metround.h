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

#ifndef METROUND_METROUND_H
#define METROUND_METROUND_H

/*
 * C interface to the metround library.
 *
 * Objects are opaque handles created by mr_*_create / analysis calls and
 * released with the matching mr_*_destroy. Every call that can fail returns
 * an mr_status; on failure the details (message, offending indices, scalar)
 * are available from mr_last_error() on the calling thread until the next
 * failing call on that thread. Output pointers are left untouched on failure.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(METROUND_BUILDING)
#    define MR_API __declspec(dllexport)
#  else
#    define MR_API __declspec(dllimport)
#  endif
#else
#  define MR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mr_status {
  MR_OK = 0,
  MR_ERR_NOT_SQUARE = 1,
  MR_ERR_TOO_FEW_POINTS = 2,
  MR_ERR_NON_FINITE_ENTRY = 3,
  MR_ERR_ASYMMETRIC_ENTRY = 4,
  MR_ERR_NONZERO_DIAGONAL = 5,
  MR_ERR_NONPOSITIVE_OFF_DIAGONAL = 6,
  MR_ERR_TRIANGLE_VIOLATION = 7,
  MR_ERR_TRANSFORM_NOT_METRIC = 8,
  MR_ERR_INVALID_ARGUMENT = 9,
  MR_ERR_CAP_REACHED_NON_ULTRAMETRIC = 10,
  MR_ERR_NOT_NEGATIVE_TYPE = 11,
  MR_ERR_NO_KERNEL_VECTOR = 12,
  MR_ERR_PARAM_OUT_OF_RANGE = 13,
  MR_ERR_TARGET_OUT_OF_RANGE = 14,
  MR_ERR_DISCONNECTED_TREE = 15,
  MR_ERR_CYCLE_DETECTED = 16,
  MR_ERR_DIMENSION_MISMATCH = 17,
  MR_ERR_WEIGHT_SUM_INVALID = 18,
  MR_ERR_INDEX_OVERLAP = 19,
  MR_ERR_SINGULAR = 20,
  MR_ERR_INTERNAL = 99
} mr_status;

typedef struct mr_error_info {
  mr_status code;
  size_t indices[4];
  size_t index_count;
  double value; /* NaN when the error carries no scalar */
  char message[512];
} mr_error_info;

/* Opaque handles. */
typedef struct mr_space mr_space;
typedef struct mr_embedding mr_embedding;
typedef struct mr_config mr_config;   /* violation or polygonal equality */
typedef struct mr_profile mr_profile;

MR_API const char* mr_version(void);
MR_API const char* mr_status_name(mr_status status);
MR_API void mr_last_error(mr_error_info* out);

/* ---- metric spaces ---------------------------------------------------- */

/* `matrix` is row-major side x side. `labels` may be NULL (defaults "0".."n").
 * A negative `tol_metric` selects the default 1e-9 * max entry. */
MR_API mr_status mr_space_create(const double* matrix, size_t side, const char* const* labels, double tol_metric,
                                 mr_space** out);
MR_API void mr_space_destroy(mr_space* space);
MR_API size_t mr_space_size(const mr_space* space);
MR_API double mr_space_distance(const mr_space* space, size_t i, size_t j);
/* Borrowed pointer, valid while the space lives. */
MR_API const char* mr_space_label(const mr_space* space, size_t i);
/* Copies side*side entries row-major into `out`. */
MR_API void mr_space_copy_matrix(const mr_space* space, double* out);

typedef struct mr_classification {
  int is_ultrametric;
  int is_additive;
  int has_ultra_witness;
  size_t ultra_witness[3];
  int has_additive_witness;
  size_t additive_witness[4];
  double tol;
} mr_classification;

/* Negative `tol` selects the default. */
MR_API mr_status mr_classify(const mr_space* space, double tol, mr_classification* out);
MR_API mr_status mr_metric_transform(const mr_space* space, double p, mr_space** out);

/* ---- negative type ---------------------------------------------------- */

typedef enum mr_negtype_state { MR_STRICT = 0, MR_BOUNDARY = 1, MR_FAILS = 2 } mr_negtype_state;

typedef struct mr_negtype_result {
  double p;
  mr_negtype_state status;
  double min_eigenvalue;
  double tolerance;
  int has_certificate;
} mr_negtype_result;

/* `spectral_tol` is relative to the largest |eigenvalue|; negative selects
 * 1e-9. When `certificate` is non-NULL it must hold size-1 doubles and
 * receives the eigenvector of the smallest eigenvalue (Gram-row order) for
 * Boundary/Fails results. */
MR_API mr_status mr_negtype_status(const mr_space* space, double p, double spectral_tol, size_t base,
                                   mr_negtype_result* out, double* certificate);

/* Row-major (size-1)^2 Gram matrix for base point `base`. */
MR_API mr_status mr_gram_matrix(const mr_space* space, double p, size_t base, double* entries, double* eigenvalues);

/* MR_ERR_SINGULAR when D_p is numerically singular; `rcond` (may be NULL) is
 * filled either way. */
MR_API mr_status mr_sanchez_invariant(const mr_space* space, double p, double* value, double* rcond);

enum {
  MR_METHOD_SPECTRAL_BISECTION = 1,
  MR_METHOD_SANCHEZ_ROOT = 2,
  MR_METHOD_ULTRAMETRIC_SHORTCUT = 4
};

typedef struct mr_genround_options {
  double p_max;
  double bis_tol;
  double spectral_tol;
} mr_genround_options;

typedef struct mr_genround_result {
  int infinite;
  double value;
  double lo;
  double hi;
  uint32_t methods;
  int has_sanchez_root;
  double sanchez_root;
} mr_genround_result;

MR_API void mr_genround_default_options(mr_genround_options* opts);
/* `opts` may be NULL for defaults. */
MR_API mr_status mr_generalized_roundness(const mr_space* space, const mr_genround_options* opts,
                                          mr_genround_result* out);

/* `*out` is set to NULL when no violation is found. */
MR_API mr_status mr_gr_violation_search(const mr_space* space, double p, size_t max_size, size_t trials,
                                        uint64_t seed, mr_config** out);

MR_API mr_status mr_deza_maehara_floor(long n, double* out);

/* ---- weighted configurations (violations, polygonal equalities) ---------- */

MR_API void mr_config_destroy(mr_config* config);
MR_API double mr_config_p(const mr_config* config);
/* side 0 = a, side 1 = b. */
MR_API size_t mr_config_side_size(const mr_config* config, int side);
MR_API void mr_config_entry(const mr_config* config, int side, size_t k, size_t* point, double* weight);
/* Violation: weighted LHS - RHS. Polygonal equality: residual. */
MR_API double mr_config_value(const mr_config* config);
/* Violation: unweighted margin, or NaN for random trials.
 * Polygonal equality: residual tolerance. */
MR_API double mr_config_aux(const mr_config* config);

/* `*out` is NULL for ultrametric spaces. Negative `kernel_tol` selects 1e-6. */
MR_API mr_status mr_find_polygonal_equality(const mr_space* space, double kernel_tol, mr_config** out);
MR_API mr_status mr_verify_polygonal_equality(const mr_space* space, double p, const size_t* a_points,
                                              const double* a_weights, size_t a_count, const size_t* b_points,
                                              const double* b_weights, size_t b_count, double* residual);

/* ---- roundness -------------------------------------------------------- */

typedef struct mr_roundness_check {
  double p;
  int holds;
  int has_witness;
  size_t witness[4]; /* x00, x01, x11, x10 */
  double margin;
  double tol;
} mr_roundness_check;

/* Negative `tol` selects the default. */
MR_API mr_status mr_roundness_check_exponent(const mr_space* space, double p, double tol, mr_roundness_check* out);

typedef struct mr_profile_options {
  double p_grid_max;
  double grid_step;
  double refine_tol;
} mr_profile_options;

MR_API void mr_profile_default_options(mr_profile_options* opts);
MR_API mr_status mr_roundness_profile(const mr_space* space, const mr_profile_options* opts, mr_profile** out);
MR_API void mr_profile_destroy(mr_profile* profile);
MR_API double mr_profile_global_lower(const mr_profile* profile);
MR_API void mr_profile_binding(const mr_profile* profile, size_t quad[4]);
MR_API size_t mr_profile_record_count(const mr_profile* profile);
MR_API void mr_profile_record(const mr_profile* profile, size_t k, size_t quad[4], double* sup_contiguous);
MR_API size_t mr_profile_grid_size(const mr_profile* profile);

MR_API mr_status mr_is_infinite_roundness(const mr_space* space, int* out);

/* ---- Euclidean embedding ---------------------------------------------- */

/* Negative `rank_tol` / `spectral_tol` select 1e-10 / 1e-9. */
MR_API mr_status mr_embed_euclidean(const mr_space* space, double p, size_t base, double rank_tol,
                                    double spectral_tol, mr_embedding** out);
/* Wraps caller-supplied coordinates (row-major rows x cols) for verification. */
MR_API mr_status mr_embedding_create(const double* coords, size_t rows, size_t cols, double p, mr_embedding** out);
MR_API void mr_embedding_destroy(mr_embedding* embedding);
MR_API size_t mr_embedding_rows(const mr_embedding* embedding);
MR_API size_t mr_embedding_rank(const mr_embedding* embedding);
MR_API double mr_embedding_p(const mr_embedding* embedding);
MR_API double mr_embedding_residual(const mr_embedding* embedding);
/* Copies rows x rank coordinates row-major. */
MR_API void mr_embedding_copy_coords(const mr_embedding* embedding, double* out);
MR_API mr_status mr_verify_isometry(const mr_embedding* embedding, const mr_space* space, double* max_error,
                                    size_t* i, size_t* j);

/* ---- generators ------------------------------------------------------- */

typedef struct mr_lbk_params {
  double b;
  long k;
  double z;
  double closed_form_gr;
} mr_lbk_params;

MR_API mr_status mr_make_lbk(double b, long k, mr_space** out);
MR_API mr_status mr_lbk_for_target(double target, mr_lbk_params* out);
MR_API mr_status mr_random_ultrametric(size_t n, uint64_t seed, double height_lo, double height_hi, mr_space** out);
/* `subset` may be NULL (leaves). */
MR_API mr_status mr_tree_path_metric(size_t vertices, const size_t* edge_u, const size_t* edge_v,
                                     const double* edge_length, size_t edge_count, const size_t* subset,
                                     size_t subset_count, mr_space** out);

#ifdef __cplusplus
}
#endif

#endif /* METROUND_METROUND_H */
