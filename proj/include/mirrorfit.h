/*
  Copyright 2026 The mirrorfit Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

/*
  mirrorfit C API.

  Detects approximate reflection symmetry in finite point sets in R^d by
  alternating an exact linear assignment step (mirror correspondences) with
  Riemannian trust-region optimization of the reflection transform over
  SO(d)^{d-1} x R^d.

  All functions returning mf_status report MF_OK on success; on failure a
  human-readable detail string is available from mf_last_error() until the
  next failing call on the same thread. Every object created by this API is
  released with the matching *_destroy function.
*/

#ifndef MIRRORFIT_H_INCLUDED
#define MIRRORFIT_H_INCLUDED

#include <stdint.h>

#if defined(_WIN32)
#define MIRRORFIT_EXPORT __declspec(dllexport)
#else
#define MIRRORFIT_EXPORT __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mf_status {
  MF_OK = 0,
  MF_ERROR_INVALID_ARGUMENT = 1,
  MF_ERROR_DIMENSION_MISMATCH = 2,
  MF_ERROR_DEGENERATE_TRANSFORM = 3,
  MF_ERROR_INIT_FAILURE = 4,
  MF_ERROR_NUMERICAL = 5,
  MF_ERROR_PARSE = 6,
  MF_ERROR_IO = 7,
  MF_ERROR_UNKNOWN = 8
} mf_status;

MIRRORFIT_EXPORT const char* mf_version(void);
MIRRORFIT_EXPORT const char* mf_status_name(mf_status status);
/* Detail message of the last failing call on this thread. */
MIRRORFIT_EXPORT const char* mf_last_error(void);

/* ------------------------------------------------------------------ */
/* Point clouds                                                       */
/* ------------------------------------------------------------------ */

typedef struct mf_cloud mf_cloud;

/* coords is column-major: point i occupies coords[i*dim .. i*dim+dim-1]. */
MIRRORFIT_EXPORT mf_status mf_cloud_create(int32_t dim, int32_t count, const double* coords,
                                           mf_cloud** out);
/* Delimited text (one point per line, '#' comments) or ASCII PLY when the
   path ends in ".ply". Parse errors name the offending line. */
MIRRORFIT_EXPORT mf_status mf_cloud_from_file(const char* path, mf_cloud** out);
MIRRORFIT_EXPORT mf_status mf_cloud_from_text(const char* text, mf_cloud** out);
MIRRORFIT_EXPORT mf_status mf_cloud_to_file(const mf_cloud* cloud, const char* path);
MIRRORFIT_EXPORT void mf_cloud_destroy(mf_cloud* cloud);
MIRRORFIT_EXPORT int32_t mf_cloud_dim(const mf_cloud* cloud);
MIRRORFIT_EXPORT int32_t mf_cloud_count(const mf_cloud* cloud);
/* out must hold dim * count doubles; written column-major. */
MIRRORFIT_EXPORT mf_status mf_cloud_coords(const mf_cloud* cloud, double* out);

/* ------------------------------------------------------------------ */
/* Detection                                                          */
/* ------------------------------------------------------------------ */

typedef struct mf_detect_options {
  double eps_theta_rad;        /* candidate-plane angle tolerance (default 5 deg) */
  double eps_d;                /* candidate-plane distance-ratio tolerance (0.05) */
  int32_t init_trials;         /* randomized initialization rounds (10) */
  int32_t max_alternations;    /* assignment/transform alternation cap (50) */
  double cost_rel_tol;         /* relative cost decrease stop (1e-10) */
  int32_t pair_cap;            /* k: keep at most 2k matched entries; 0 = all */
  uint64_t seed;               /* PRNG seed (mt19937_64) */
  int32_t subsample_threshold; /* seeded subsampling above this count (2000) */
  /* Trust-region controls; non-positive values select the defaults. */
  double tr_initial_radius;
  double tr_max_radius;
  double tr_accept_ratio;
  int32_t tr_max_outer_iters;
  double tr_grad_tol;
  int32_t tr_tcg_max_iters;
  double tr_tcg_kappa;
  double tr_tcg_theta;
} mf_detect_options;

MIRRORFIT_EXPORT void mf_detect_options_init(mf_detect_options* opts);

typedef struct mf_result mf_result;

MIRRORFIT_EXPORT mf_status mf_detect(const mf_cloud* cloud, const mf_detect_options* opts,
                                     mf_result** out);
MIRRORFIT_EXPORT void mf_result_destroy(mf_result* result);

MIRRORFIT_EXPORT int32_t mf_result_dim(const mf_result* result);
/* normal_out: dim doubles. */
MIRRORFIT_EXPORT mf_status mf_result_plane(const mf_result* result, double* normal_out,
                                           double* offset_out);
MIRRORFIT_EXPORT int32_t mf_result_rotation_count(const mf_result* result);
/* out: dim*dim doubles, row-major. */
MIRRORFIT_EXPORT mf_status mf_result_rotation(const mf_result* result, int32_t index, double* out);
MIRRORFIT_EXPORT mf_status mf_result_translation(const mf_result* result, double* out);
MIRRORFIT_EXPORT double mf_result_cost(const mf_result* result);
MIRRORFIT_EXPORT int32_t mf_result_alternations(const mf_result* result);
/* Mutual pairs [i, i'] with i <= i'; out holds 2 * pair_count int32. */
MIRRORFIT_EXPORT int32_t mf_result_pair_count(const mf_result* result);
MIRRORFIT_EXPORT mf_status mf_result_pairs(const mf_result* result, int32_t* out);
/* Original indices of the detection working set when input was subsampled;
   count 0 means detection used every input point. */
MIRRORFIT_EXPORT int32_t mf_result_subsample_count(const mf_result* result);
MIRRORFIT_EXPORT mf_status mf_result_subsample(const mf_result* result, int32_t* out);
/* Result document JSON (schema v1); release with mf_string_free. */
MIRRORFIT_EXPORT mf_status mf_result_to_json(const mf_result* result, char** out);
MIRRORFIT_EXPORT mf_status mf_result_from_json(const char* text, mf_result** out);

MIRRORFIT_EXPORT void mf_string_free(char* str);

/* ------------------------------------------------------------------ */
/* Synthetic benchmarks                                               */
/* ------------------------------------------------------------------ */

typedef struct mf_synth_options {
  int32_t dim;
  int32_t count;   /* total points; odd counts require allow_self */
  double sigma2;   /* per-coordinate Gaussian perturbation variance */
  uint64_t seed;
  int32_t allow_self; /* odd counts place one extra point on the plane */
  /* Ground-truth plane; when neither normal nor angles are given, a seeded
     random unit normal is drawn. */
  const double* plane_normal; /* dim doubles, or NULL */
  const double* plane_point;  /* point on the plane (dim doubles), or NULL
                                 for the box center (0.5, ..., 0.5) */
  const double* angles_rad;   /* factor angles: 1 value (d=2) or 2 (d=3) */
  int32_t angle_count;
} mf_synth_options;

MIRRORFIT_EXPORT void mf_synth_options_init(mf_synth_options* opts, int32_t dim, int32_t count);

typedef struct mf_truth mf_truth;

MIRRORFIT_EXPORT mf_status mf_synth(const mf_synth_options* opts, mf_cloud** cloud_out,
                                    mf_truth** truth_out);
MIRRORFIT_EXPORT void mf_truth_destroy(mf_truth* truth);
MIRRORFIT_EXPORT int32_t mf_truth_dim(const mf_truth* truth);
MIRRORFIT_EXPORT int32_t mf_truth_count(const mf_truth* truth);
MIRRORFIT_EXPORT mf_status mf_truth_plane(const mf_truth* truth, double* normal_out,
                                          double* offset_out);
MIRRORFIT_EXPORT double mf_truth_sigma2(const mf_truth* truth);
MIRRORFIT_EXPORT int32_t mf_truth_pair_count(const mf_truth* truth);
MIRRORFIT_EXPORT mf_status mf_truth_pairs(const mf_truth* truth, int32_t* out);
MIRRORFIT_EXPORT mf_status mf_truth_to_json(const mf_truth* truth, char** out);
MIRRORFIT_EXPORT mf_status mf_truth_from_json(const char* text, mf_truth** out);

/* Writes the full d=2 evaluation grid (1254 clouds and sidecars) or the
   d=3 grid (1056) into dir; returns the file-pair count. */
MIRRORFIT_EXPORT mf_status mf_write_evaluation_grid(const char* dir, int32_t dim, uint64_t seed,
                                               int32_t* files_out);

/* ------------------------------------------------------------------ */
/* Evaluation metrics                                                 */
/* ------------------------------------------------------------------ */

/* pairs: 2*pair_count int32 of mutual [i, i'] entries. */
MIRRORFIT_EXPORT mf_status mf_metric_ed(const mf_cloud* cloud, const int32_t* pairs,
                                        int32_t pair_count, const double* plane_normal,
                                        double plane_offset, double* value_out,
                                        int32_t* excluded_out);
MIRRORFIT_EXPORT mf_status mf_metric_em(const mf_cloud* cloud, const int32_t* pairs,
                                        int32_t pair_count, const double* plane_normal,
                                        double plane_offset, double* value_out,
                                        int32_t* excluded_out);
MIRRORFIT_EXPORT mf_status mf_correspondence_rate(const mf_cloud* cloud, const int32_t* est_pairs,
                                                  int32_t est_pair_count, const mf_truth* truth,
                                                  double tau_d, double* out);
/* Half-diagonal of the cloud's axis-aligned bounding box (the scale s for
   distance thresholds). */
MIRRORFIT_EXPORT mf_status mf_bbox_scale(const mf_cloud* cloud, double* out);
MIRRORFIT_EXPORT mf_status mf_plane_correct(const mf_cloud* cloud, const double* est_normal,
                                            double est_offset, const double* gt_normal,
                                            double gt_offset, double t_theta_rad, double t_d,
                                            int32_t* out);

/* ------------------------------------------------------------------ */
/* Seeded sweep (generate + detect + curves)                          */
/* ------------------------------------------------------------------ */

typedef struct mf_sweep_options {
  int32_t dim;
  int32_t count;              /* points per instance */
  uint64_t seed;
  const double* sigma2_levels;
  int32_t level_count;
  int32_t instances_per_level;
  int32_t threads;            /* 0 = logical cores; MIRRORFIT_THREADS bounds it */
  mf_detect_options detect;
} mf_sweep_options;

MIRRORFIT_EXPORT void mf_sweep_options_init(mf_sweep_options* opts, int32_t dim, int32_t count);

/* Long-format evaluation rows: (instance, sigma2, threshold, metric, value).
   Aggregate curve rows carry instance -1; scalar metric rows carry a NaN
   threshold. */
typedef struct mf_eval_table mf_eval_table;

MIRRORFIT_EXPORT mf_status mf_sweep(const mf_sweep_options* opts, mf_eval_table** out);
MIRRORFIT_EXPORT void mf_eval_table_destroy(mf_eval_table* table);
MIRRORFIT_EXPORT int32_t mf_eval_table_rows(const mf_eval_table* table);
MIRRORFIT_EXPORT mf_status mf_eval_table_row(const mf_eval_table* table, int32_t row,
                                             int32_t* instance, double* sigma2,
                                             double* threshold, const char** metric,
                                             double* value);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MIRRORFIT_H_INCLUDED */
