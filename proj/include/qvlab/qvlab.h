// Copyright 2026 The qvlab Authors
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

#ifndef QVLAB_QVLAB_H
#define QVLAB_QVLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QVL_BUILDING_LIBRARY)
#    define QVL_API __declspec(dllexport)
#  else
#    define QVL_API __declspec(dllimport)
#  endif
#else
#  define QVL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qvl_status {
  QVL_OK = 0,
  QVL_ERR_INVALID_ARGUMENT = 1,
  QVL_ERR_DIMENSION_MISMATCH = 2,
  QVL_ERR_INFEASIBLE_GRAPH = 3,
  QVL_ERR_DEGENERATE_SPECTRUM = 4,
  QVL_ERR_TOO_LARGE = 5,
  QVL_ERR_NON_FINITE = 6,
  QVL_ERR_IO = 7,
  QVL_ERR_PARSE = 8,
  QVL_ERR_SCHEMA = 9,
  QVL_ERR_INTERNAL = 10
} qvl_status;

typedef struct qvl_instance qvl_instance;
typedef struct qvl_spectrum qvl_spectrum;
typedef struct qvl_experiment qvl_experiment;
typedef struct qvl_store qvl_store;

QVL_API const char* qvl_version(void);
QVL_API const char* qvl_status_name(qvl_status status);

/* Message of the last failed call on the calling thread; "" if none. */
QVL_API const char* qvl_last_error(void);

/* Frees strings returned through char** out-parameters. */
QVL_API void qvl_string_free(char* s);

/* Counter-based seed derivation used by the batch runner. */
QVL_API uint64_t qvl_derive_seed(uint64_t master, uint32_t stream, uint32_t index);

/* ---- instances ---------------------------------------------------------- */

/* kind: "regular" or "uniform-random". */
QVL_API qvl_status qvl_instance_generate(int n, int edges, const char* kind, uint64_t seed, qvl_instance** out);
QVL_API qvl_status qvl_instance_from_json(const char* text, qvl_instance** out);
QVL_API qvl_status qvl_instance_load(const char* path, qvl_instance** out);
QVL_API qvl_status qvl_instance_save(const qvl_instance* inst, const char* path);
QVL_API qvl_status qvl_instance_to_json(const qvl_instance* inst, char** out);
QVL_API void qvl_instance_free(qvl_instance* inst);

QVL_API int qvl_instance_n(const qvl_instance* inst);
QVL_API size_t qvl_instance_edge_count(const qvl_instance* inst);
QVL_API uint64_t qvl_instance_seed(const qvl_instance* inst);
QVL_API qvl_status qvl_instance_density(const qvl_instance* inst, double* out);

/* bits[k] in {0, 1} is variable k. */
QVL_API qvl_status qvl_instance_energy(const qvl_instance* inst, const uint8_t* bits, size_t len, int64_t* out);

/* Nearest realizable edge count: round(density * n(n-1)/2). */
QVL_API qvl_status qvl_resolve_edge_count(int n, double density, int* out);

/* ---- exact spectrum ----------------------------------------------------- */

QVL_API qvl_status qvl_spectrum_compute(const qvl_instance* inst, qvl_spectrum** out);
QVL_API void qvl_spectrum_free(qvl_spectrum* spectrum);

QVL_API int64_t qvl_spectrum_ground_energy(const qvl_spectrum* spectrum);
QVL_API int64_t qvl_spectrum_first_excited_energy(const qvl_spectrum* spectrum);
QVL_API size_t qvl_spectrum_ground_degeneracy(const qvl_spectrum* spectrum);
QVL_API size_t qvl_spectrum_first_excited_degeneracy(const qvl_spectrum* spectrum);
QVL_API int qvl_spectrum_hamming_bits(const qvl_spectrum* spectrum);
QVL_API double qvl_spectrum_hamming_distance(const qvl_spectrum* spectrum);
QVL_API qvl_status qvl_spectrum_to_json(const qvl_spectrum* spectrum, char** out);

/* ---- single runs -------------------------------------------------------- */

typedef struct qvl_solve_options {
  const char* entanglement; /* "none", "linear", "compatible", "random" */
  int layers;
  double rho;      /* 1 gives VQE */
  uint64_t shots;  /* 0: exact */
  const char* optimizer; /* "spsa", "nelder-mead", "quasi-newton" */
  double beta;
  double perturbation;
  int random_perturbation;
  uint64_t seed;
  int max_iterations; /* <= 0: default for the optimizer */
  size_t history_stride;
  size_t top_states;
} qvl_solve_options;

QVL_API void qvl_solve_options_init(qvl_solve_options* options);

/* Writes a JSON report and the 0/1 success flag. */
QVL_API qvl_status qvl_solve(const qvl_instance* inst, const qvl_solve_options* options, char** report,
                             int* success);

/* ---- batches ------------------------------------------------------------ */

/* Overrides are "key=value" strings; nested keys use dots. */
QVL_API qvl_status qvl_experiment_from_json(const char* text, const char* const* overrides, size_t n_overrides,
                                            qvl_experiment** out);
QVL_API qvl_status qvl_experiment_preset(const char* name, const char* const* overrides, size_t n_overrides,
                                         qvl_experiment** out);
QVL_API qvl_status qvl_experiment_to_json(const qvl_experiment* experiment, char** out);
QVL_API void qvl_experiment_free(qvl_experiment* experiment);

/* Newline-separated preset names. */
QVL_API qvl_status qvl_preset_names(char** out);

QVL_API qvl_status qvl_bench_run(const qvl_experiment* experiment, int workers, qvl_store** out);
QVL_API qvl_status qvl_store_read(const char* dir, qvl_store** out);
QVL_API qvl_status qvl_store_write(const qvl_store* store, const char* dir);
QVL_API qvl_status qvl_store_ndjson(const qvl_store* store, char** out);
QVL_API qvl_status qvl_store_aggregate_json(const qvl_store* store, char** out);
QVL_API size_t qvl_store_size(const qvl_store* store);
QVL_API size_t qvl_store_failures(const qvl_store* store);
QVL_API void qvl_store_free(qvl_store* store);

/* figure may be NULL to infer it from the experiment name. The written paths
   are returned newline-separated. */
QVL_API qvl_status qvl_report(const qvl_store* store, const char* figure, const char* dir, int svg, char** written);

#ifdef __cplusplus
}
#endif

#endif /* QVLAB_QVLAB_H */
