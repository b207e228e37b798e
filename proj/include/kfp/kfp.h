// Copyright 2026 The kfp Authors
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
/* C interface of the kfp library. All objects are opaque handles; every call
 * returns a status code and kfp_last_error() describes the most recent
 * failure on the calling thread. */
#ifndef KFP_KFP_H
#define KFP_KFP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KFP_API __declspec(dllexport)
#else
#define KFP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kfp_status {
  KFP_OK = 0,
  KFP_ERR_INVALID_ARGUMENT = 1,
  KFP_ERR_DOMAIN = 2,
  KFP_ERR_NOT_ON_BOUNDARY = 3,
  KFP_ERR_OUT_OF_CHART = 4,
  KFP_ERR_NO_CONVERGENCE = 5,
  KFP_ERR_ACCURACY_UNREACHABLE = 6,
  KFP_ERR_CFL_VIOLATION = 7,
  KFP_ERR_MISSING_TRACE = 8,
  KFP_ERR_DIVERGENCE = 9,
  KFP_ERR_CONFIG = 10,
  KFP_ERR_IO = 11,
  KFP_ERR_CHECK_FAILED = 12,
  KFP_ERR_INTERNAL = 100
} kfp_status;

typedef struct kfp_report kfp_report;
typedef struct kfp_solver kfp_solver;

KFP_API const char* kfp_version(void);
/* Message of the last failed call on this thread; empty when none. */
KFP_API const char* kfp_last_error(void);
KFP_API const char* kfp_status_name(kfp_status status);
/* Frees strings returned through char** out-parameters. */
KFP_API void kfp_string_free(char* text);

/* ---- runs and verification ------------------------------------------- */

/* Parses the config file and executes its pipeline into out_dir. A negative
 * seed or a non-positive thread count keeps the value from the config.
 * Returns KFP_OK once the pipeline ran, even when checks failed or the run
 * stopped early (see kfp_report_passed / kfp_report_failure). Parse errors
 * return KFP_ERR_CONFIG and write nothing. */
KFP_API kfp_status kfp_run(const char* config_path, const char* out_dir, int64_t seed,
                           int threads, kfp_report** out);

/* Called after each criterion of kfp_verify. */
typedef void (*kfp_progress_fn)(int criterion, const char* title, int passed,
                                double seconds, void* user);

/* Runs a named acceptance suite: all, analytic, solver, iteration, geometry
 * or viscosity. progress may be NULL. */
KFP_API kfp_status kfp_verify(const char* suite, uint64_t seed, int threads,
                              kfp_progress_fn progress, void* user, kfp_report** out);

KFP_API int kfp_report_passed(const kfp_report* report);
KFP_API size_t kfp_report_check_count(const kfp_report* report);
KFP_API kfp_status kfp_report_check(const kfp_report* report, size_t index, const char** name,
                                    int* passed, double* measured, double* tolerance,
                                    const char** detail);
/* JSON document owned by the report. */
KFP_API const char* kfp_report_json(const kfp_report* report);
/* Error that stopped a run early, or NULL. */
KFP_API const char* kfp_report_failure(const kfp_report* report);
KFP_API void kfp_report_free(kfp_report* report);

/* ---- special functions ------------------------------------------------- */

KFP_API kfp_status kfp_kummer_m(double a, double b, double tau, double* out);
KFP_API kfp_status kfp_tricomi_psi(double tau, double* out);
/* Steady solution f(x, v) = x^{1/6} Psi(-v^3 / (9x)), x > 0. */
KFP_API kfp_status kfp_steady(double x, double v, double* out);

typedef enum kfp_table_kind {
  /* columns tau, psi, m1 = M(-1/6, 2/3, tau), m2 = M(1/6, 4/3, tau) */
  KFP_TABLE_PSI = 0,
  /* columns x, v, f over an x range times a v range */
  KFP_TABLE_STEADY = 1
} kfp_table_kind;

typedef struct kfp_table_spec {
  kfp_table_kind kind;
  double first_min, first_max; /* tau, or x for the steady table */
  int first_points;
  int first_log;               /* logarithmic spacing of the first axis */
  double v_min, v_max;         /* steady table only */
  int v_points;
} kfp_table_spec;

/* CSV text with a "# kfp <version> config <hash>" header; free it with
 * kfp_string_free. Empty or non-finite ranges are invalid arguments. */
KFP_API kfp_status kfp_tabulate_special(const kfp_table_spec* spec, char** csv);

/* ---- diagnostics -------------------------------------------------------- */

typedef enum kfp_metric { KFP_METRIC_KINETIC = 0, KFP_METRIC_EUCLIDEAN = 1 } kfp_metric;

/* Hoelder seminorm of a field CSV dump (columns t?, x, v, f). */
KFP_API kfp_status kfp_holder_probe(const char* csv_path, double alpha, kfp_metric metric,
                                    uint64_t random_pairs, uint64_t seed, double* seminorm);

/* ---- stepping a configured problem ------------------------------------- */

/* Builds the problem of a config text (march scheme) at t = 0. */
KFP_API kfp_status kfp_solver_create(const char* config_text, kfp_solver** out);
KFP_API kfp_status kfp_solver_step(kfp_solver* solver, int steps);
KFP_API kfp_status kfp_solver_time(const kfp_solver* solver, double* t);
KFP_API kfp_status kfp_solver_mass(const kfp_solver* solver, double* mass);
/* nx cells and nv + 1 velocity nodes; the field has nx * (nv + 1) values. */
KFP_API kfp_status kfp_solver_shape(const kfp_solver* solver, int* nx, int* nodes);
/* Copies the field (cell-major) into buffer of length at least count. */
KFP_API kfp_status kfp_solver_field(const kfp_solver* solver, double* buffer, size_t count);
KFP_API void kfp_solver_free(kfp_solver* solver);

#ifdef __cplusplus
}
#endif

#endif /* KFP_KFP_H */
