#ifndef ELECTROFLOW_H
#define ELECTROFLOW_H

#include <stddef.h>

#if defined(EF_BUILDING_LIBRARY)
#define EF_API __attribute__((visibility("default")))
#else
#define EF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returning ef_status leaves a message for
   ef_last_error() (per thread) when the result is not EF_OK. */
typedef enum ef_status {
  EF_OK = 0,
  EF_INVALID_ARGUMENT = 1,
  EF_DIMENSION_MISMATCH = 2,
  EF_SYMMETRY_VIOLATION = 3,
  EF_OVERFLOW = 4,
  EF_CFL_VIOLATION = 5,
  EF_RANK_COLLAPSE = 6,
  EF_QUADRATURE_NONCONVERGENCE = 7,
  EF_BAND_LIMIT = 8,
  EF_CONFIG = 9,
  EF_IO = 10,
  EF_PRECONDITION = 11,
  EF_ILL_CONDITIONED = 12,
  EF_INTERNAL = 13
} ef_status;

typedef struct ef_config ef_config;
typedef struct ef_report ef_report;
typedef struct ef_solver ef_solver;
typedef struct ef_state ef_state;

typedef enum ef_component { EF_Q = 0, EF_U1 = 1, EF_U2 = 2 } ef_component;

typedef struct ef_norms {
  double t;
  double l2_q, l4_q, l8_q;
  double h1_q, halpha2_q;
  double l2_u, h1_u, h2_u;
  double gevrey_tau_hat; /* NaN when the fit is ill-conditioned */
} ef_norms;

EF_API const char* ef_version(void);
EF_API const char* ef_status_name(ef_status status);
EF_API const char* ef_last_error(void);

/* Configuration */
EF_API ef_status ef_config_parse(const char* text, ef_config** out);
EF_API ef_status ef_config_load(const char* path, ef_config** out);
EF_API void ef_config_free(ef_config* cfg);
EF_API const char* ef_config_scenario(const ef_config* cfg);
EF_API const char* ef_config_output_dir(const ef_config* cfg);
/* Resolved `key = value` text; owned by cfg. */
EF_API const char* ef_config_echo(const ef_config* cfg);

/* Scenarios. output_dir may be NULL to use the configured one. */
EF_API ef_status ef_run_scenario(const ef_config* cfg, const char* output_dir, int overwrite, ef_report** out);
EF_API ef_status ef_verify_scenario(const ef_config* cfg, const char* output_dir, ef_report** out);
EF_API void ef_report_free(ef_report* report);
EF_API int ef_report_passed(const ef_report* report);
EF_API const char* ef_report_claim(const ef_report* report);
EF_API const char* ef_report_json(const ef_report* report);
EF_API size_t ef_report_assertion_count(const ef_report* report);
/* Any out pointer may be NULL. Strings are owned by the report. */
EF_API ef_status ef_report_assertion(const ef_report* report, size_t index, const char** name, int* passed,
                                     double* value, double* threshold, const char** detail);

/* Direct solver access. scheme: 2 or 4 (IFRK2 / IFRK4). */
EF_API ef_status ef_solver_create(int n, double alpha, double dt, int scheme, double epsilon, ef_solver** out);
EF_API ef_status ef_solver_from_config(const ef_config* cfg, ef_solver** out);
EF_API void ef_solver_free(ef_solver* solver);
EF_API ef_status ef_solver_step(ef_solver* solver, ef_state* state, int steps);

EF_API ef_status ef_state_create(int n, ef_state** out);
/* Initial data described by the config (ic.* keys). */
EF_API ef_status ef_state_from_config(const ef_config* cfg, ef_state** out);
EF_API void ef_state_free(ef_state* state);
EF_API double ef_state_time(const ef_state* state);
/* Sets mode k and its conjugate partner -k so the field stays real. */
EF_API ef_status ef_state_set_mode(ef_state* state, ef_component c, int kx, int ky, double re, double im);
EF_API ef_status ef_state_get_mode(const ef_state* state, ef_component c, int kx, int ky, double* re, double* im);
EF_API ef_status ef_state_norms(const ef_state* state, double alpha, ef_norms* out);
EF_API ef_status ef_state_write_snapshots(const ef_state* state, double alpha, const char* dir, const char* stem);

#ifdef __cplusplus
}
#endif

#endif
