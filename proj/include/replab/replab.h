// Copyright 2026 The replab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/* C interface to replab. Objects are opaque handles created by *_create or
 * returned through out-parameters and released with the matching *_destroy.
 * Every fallible call returns a replab_status; on failure the message is
 * available from replab_last_error() on the same thread. */

#ifndef REPLAB_H
#define REPLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(REPLAB_BUILDING_SHARED)
#define REPLAB_API __attribute__((visibility("default")))
#else
#define REPLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum replab_status {
    REPLAB_OK = 0,
    REPLAB_ERR_ARGUMENT = 1,
    REPLAB_ERR_RESOURCE = 2,
    REPLAB_ERR_UNSUPPORTED = 3,
    REPLAB_ERR_VALIDATION = 4,
    REPLAB_ERR_INTERNAL = 5
} replab_status;

typedef struct replab_wg_table replab_wg_table;
typedef struct replab_rng replab_rng;
typedef struct replab_matrix replab_matrix;
typedef struct replab_tree replab_tree;
typedef struct replab_report replab_report;

REPLAB_API const char *replab_version(void);
/* Message of the last failed call on this thread ("" if none). */
REPLAB_API const char *replab_last_error(void);
REPLAB_API const char *replab_status_name(replab_status status);
/* Frees strings returned through char ** out-parameters. */
REPLAB_API void replab_string_free(char *s);

REPLAB_API replab_status replab_set_memory_budget(uint64_t bytes);
REPLAB_API uint64_t replab_memory_budget(void);

/* Weingarten tables. */
REPLAB_API replab_status replab_wg_table_create(unsigned m, unsigned d, replab_wg_table **out);
REPLAB_API void replab_wg_table_destroy(replab_wg_table *table);
/* Value at the permutation i -> images[i] of {0..degree-1}. */
REPLAB_API replab_status replab_wg_value(const replab_wg_table *table, const unsigned *images, unsigned degree, double *out);
/* {"m":..,"d":..,"values":{"1+1":"1/15",...}} */
REPLAB_API replab_status replab_wg_to_json(const replab_wg_table *table, char **out_json);
/* 1 when sum |Wg| equals (d-m)!/d! exactly. */
REPLAB_API replab_status replab_wg_check_absolute_sum(const replab_wg_table *table, int *out_holds);

/* Random number generators. */
REPLAB_API replab_status replab_rng_create(uint64_t seed, replab_rng **out);
REPLAB_API void replab_rng_destroy(replab_rng *rng);

/* Dense complex matrices; data is row-major with interleaved (re, im). */
REPLAB_API replab_status replab_matrix_create(size_t rows, size_t cols, const double *re_im, replab_matrix **out);
REPLAB_API void replab_matrix_destroy(replab_matrix *m);
REPLAB_API replab_status replab_matrix_shape(const replab_matrix *m, size_t *rows, size_t *cols);
/* Copies 2 * rows * cols doubles into re_im (len is its capacity in doubles). */
REPLAB_API replab_status replab_matrix_data(const replab_matrix *m, double *re_im, size_t len);
REPLAB_API replab_status replab_haar_sample(unsigned d, replab_rng *rng, replab_matrix **out);
REPLAB_API replab_status replab_clifford_sample(unsigned n_qubits, replab_rng *rng, replab_matrix **out);
/* E_Haar[tr(A U B U^dag)^m]. */
REPLAB_API replab_status replab_haar_expect_trace_power(const replab_matrix *a, const replab_matrix *b, unsigned m,
                                                        double *out_re, double *out_im);

/* Measurement trees (node-table JSON). */
REPLAB_API replab_status replab_tree_from_json(const char *json, replab_tree **out);
REPLAB_API void replab_tree_destroy(replab_tree *tree);
REPLAB_API replab_status replab_tree_to_json(const replab_tree *tree, char **out_json);
REPLAB_API replab_status replab_tree_depth(const replab_tree *tree, unsigned *out);
/* Exact-Haar TV bound 2N max bracket over the tree's vectors. */
REPLAB_API replab_status replab_tree_tv_bound(const replab_tree *tree, double epsilon, double *out);

/* Experiments. The returned report exists even when the experiment itself
 * failed; inspect replab_report_exit_code. */
REPLAB_API size_t replab_command_count(void);
REPLAB_API const char *replab_command_name(size_t index);
REPLAB_API replab_status replab_experiment_run(const char *config_json, replab_report **out);
REPLAB_API void replab_report_destroy(replab_report *report);
REPLAB_API int replab_report_exit_code(const replab_report *report);
REPLAB_API const char *replab_report_format(const replab_report *report);
REPLAB_API const char *replab_report_body(const replab_report *report);
REPLAB_API const char *replab_report_summary(const replab_report *report);
REPLAB_API const char *replab_report_meta(const replab_report *report);
REPLAB_API const char *replab_report_error(const replab_report *report);

#ifdef __cplusplus
}
#endif

#endif /* REPLAB_H */
