/*
 * Copyright 2026 The entangle-lab authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C API of the entangle-lab shared library.
 *
 * All functions return el_status; results come back through out-parameters.
 * Objects are opaque handles freed with their el_*_free function. On any
 * failure el_last_error() returns a thread-local message describing it.
 *
 * Conventions shared with the file formats: qubit 0 is the leftmost letter
 * of a Pauli word and the most significant bit of basis-state indices;
 * entangled dataset labels are -1, separable +1.
 */

#ifndef ENTANGLE_LAB_H
#define ENTANGLE_LAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum el_status {
    EL_OK = 0,
    EL_ERR_INVALID_ARGUMENT = 1, /* bad input or unusable file */
    EL_ERR_NUMERICAL = 2,        /* solver or sampling failure */
    EL_ERR_ACCURACY_FLOOR = 3,   /* training floor unmet; outputs still written */
    EL_ERR_INTERNAL = 4
} el_status;

typedef struct el_state el_state;   /* density matrix */
typedef struct el_model el_model;   /* trained classifier */
typedef struct el_shadow el_shadow; /* measurement snapshots */

const char* el_version(void);

/* Message for the most recent failure on this thread; never NULL. */
const char* el_last_error(void);

/* ---- states ---------------------------------------------------------- */

el_status el_state_ghz(int n_qubits, el_state** out);
el_status el_state_ghz_coherent(int n_qubits, double theta, double phi, el_state** out);
el_status el_state_w(int n_qubits, el_state** out);

/* Ginibre-induced random mixed state. */
el_status el_state_random(int n_qubits, uint64_t seed, el_state** out);

/* rho_A (x) rho_B with part_a on the listed qubit indices. */
el_status el_state_random_biseparable(int n_qubits, const int* part_a, size_t part_a_len,
                                      uint64_t seed, el_state** out);

/* (1-p)*rho + p*I/2^n. */
el_status el_state_mix_white_noise(const el_state* rho, double p_noise, el_state** out);

int el_state_num_qubits(const el_state* rho);
void el_state_free(el_state* rho);

/* ---- observables and detection oracles ------------------------------- */

/* pauli is a word over {I,X,Y,Z}, qubit 0 leftmost, e.g. "XIIX". */
el_status el_expectation(const el_state* rho, const char* pauli, double* out);

/* Smallest eigenvalue of the partial transpose across part_a | rest. */
el_status el_ppt_min_eigenvalue(const el_state* rho, const int* part_a, size_t part_a_len,
                                double* out);

/* npt_any / npt_all over every bipartition (complement symmetry removed). */
el_status el_ppt_flags(const el_state* rho, int* npt_any, int* npt_all);

/* Projector witness value alpha - <target|rho|target> for target_class in
 * {"ghz", "w", "bell"}; alpha is 1/2 for ghz/bell and (n-1)/n for w. */
el_status el_witness_value(const el_state* rho, const char* target_class, double* out);

el_status el_chsh_value(const el_state* rho, double* out);          /* 2 qubits */
el_status el_unfaithfulness_chi2(const el_state* rho, double* out); /* 2 qubits */

/* ---- classical shadows ------------------------------------------------ */

el_status el_shadow_collect_randomized(const el_state* rho, size_t rounds, uint64_t seed,
                                       el_shadow** out);

/* observables: array of Pauli words sharing the register size. */
el_status el_shadow_collect_derandomized(const el_state* rho, const char* const* observables,
                                         size_t n_observables, size_t rounds, double epsilon,
                                         uint64_t seed, el_shadow** out);

/* never_hit (optional) is set to 1 when no snapshot matched the word. */
el_status el_shadow_estimate(const el_shadow* shadow, const char* pauli, double* out,
                             int* never_hit);

/* Text format: one "BASES BITS" line per snapshot, e.g. "XZYZ 0110". */
el_status el_shadow_save(const el_shadow* shadow, const char* path);
el_status el_shadow_load(const char* path, int derandomized, el_shadow** out);

size_t el_shadow_num_snapshots(const el_shadow* shadow);
void el_shadow_free(el_shadow* shadow);

/* ---- trained models --------------------------------------------------- */

el_status el_model_load(const char* path, el_model** out);
el_status el_model_save(const el_model* model, const char* path);
size_t el_model_num_features(const el_model* model);

/* Borrowed pointer, valid until the model is freed. */
const char* el_model_observable(const el_model* model, size_t index);

/* features must be ordered like the model's observable list. */
el_status el_model_decision_value(const el_model* model, const double* features,
                                  size_t n_features, double* out);
void el_model_free(el_model* model);

/* ---- pipeline commands ------------------------------------------------ */

/*
 * Runs one pipeline command described by a JSON config, e.g.
 *   {"command":"gen-dataset","out":"data.jsonl","n":4,"k":2,"per_class":100}
 * Commands: gen-dataset, train, predict, shadow-bench, collect-shadow,
 * oracle-check. Missing keys take documented defaults; every command writes
 * its outputs plus <out>.manifest.json, and running a stored manifest config
 * again reproduces the outputs byte for byte.
 *
 * On success *result_json (if non-NULL) holds a report object; free it with
 * el_string_free. EL_ERR_ACCURACY_FLOOR still writes outputs and a report.
 */
el_status el_run_command(const char* config_json, char** result_json);

/* Re-executes the config embedded in a manifest file. */
el_status el_rerun_manifest(const char* manifest_path, char** result_json);

void el_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* ENTANGLE_LAB_H */
