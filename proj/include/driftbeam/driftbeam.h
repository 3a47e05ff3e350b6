/* SPDX-License-Identifier: Apache-2.0 */
#ifndef DRIFTBEAM_H
#define DRIFTBEAM_H

#include <stddef.h>

#if defined(DRB_BUILDING)
#define DRB_API __attribute__((visibility("default")))
#else
#define DRB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum drb_status {
  DRB_OK = 0,
  DRB_E_INVALID_ARGUMENT = 1,
  DRB_E_DOMAIN = 2,
  DRB_E_DIMENSION = 3,
  DRB_E_MODEL_MISMATCH = 4,
  DRB_E_THRESHOLD = 5,
  DRB_E_DUPLICATE_FREQUENCY = 6,
  DRB_E_NUMERICAL = 7,
  DRB_E_IO = 8,
  DRB_E_CONFIG = 9,
  DRB_E_INTERNAL = 99
} drb_status;

typedef struct drb_scenario drb_scenario;
typedef struct drb_result drb_result;

/* Message of the last failure on the calling thread; empty when none. */
DRB_API const char* drb_last_error(void);
DRB_API const char* drb_version(void);
DRB_API void drb_string_free(char* s);

/* Scenarios. JSON schema is documented in README.md; unknown keys are rejected. */
DRB_API drb_status drb_scenario_from_json(const char* json, drb_scenario** out);
DRB_API drb_status drb_scenario_from_preset(const char* name, drb_scenario** out);
DRB_API drb_status drb_scenario_to_json(const drb_scenario* s, char** out);
DRB_API void drb_scenario_free(drb_scenario* s);
DRB_API drb_status drb_preset_names(char** json_out);

/* Writes offsets.csv and data.csv (m, n, re, im) for the scenario. */
DRB_API drb_status drb_simulate(const drb_scenario* s, const char* dir);

/* Runs the configured method. Pipeline failures such as coincident frequencies are
   reported by drb_result_status and do not make drb_run fail. */
DRB_API drb_status drb_run(const drb_scenario* s, drb_result** out);
DRB_API drb_status drb_result_status(const drb_result* r);
DRB_API drb_status drb_result_to_json(const drb_result* r, char** out);
DRB_API drb_status drb_result_write(const drb_result* r, const char* dir, int svg);
/* Copies up to cap values; *n receives the full count. */
DRB_API drb_status drb_result_frequencies(const drb_result* r, double* out, size_t cap, size_t* n);
/* Interleaved re, im pairs; cap counts doubles. */
DRB_API drb_status drb_result_weights(const drb_result* r, double* out, size_t cap, size_t* n);
DRB_API drb_status drb_result_null_depths(const drb_result* r, double* out, size_t cap, size_t* n);
DRB_API void drb_result_free(drb_result* r);

/* IVDST against ADMM on identical data; JSON report. */
DRB_API drb_status drb_benchmark(const drb_scenario* s, const char* dir, char** json_out);

/* options_json may be NULL: {"trials", "anm_M", "svg", "run_anm", "seed"}. */
DRB_API drb_status drb_experiment(const char* name, const char* options_json, const char* dir, char** json_out);

/* Reads "weights" and the array from a result.json and writes pattern.csv. */
DRB_API drb_status drb_pattern_from_result(const char* result_json_path, const char* dir, int svg);

/* S is written column-major (M x L); lambdas may be NULL. */
DRB_API drb_status drb_dpss(int M, double W, int L, double* S, double* lambdas);
/* re_im receives 2N doubles. */
DRB_API drb_status drb_steering_vector(double theta_deg, const double* positions, int N, double k0, double* re_im);

#ifdef __cplusplus
}
#endif

#endif
