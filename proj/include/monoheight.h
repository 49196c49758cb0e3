/*
 * monoheight -- canonical heights for monomial maps on the algebraic torus.
 *
 * C interface of the shared library. Matrices and points are opaque handles;
 * structured results come back as JSON strings allocated by the library and
 * released with mh_string_free. All functions return a status code; on
 * failure mh_last_error_message() describes the problem (the buffer is
 * thread-local and valid until the next failing call on the same thread).
 */

#ifndef MONOHEIGHT_H
#define MONOHEIGHT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mh_status {
  MH_OK = 0,
  MH_ERROR_INVALID_ARGUMENT = 1,
  MH_ERROR_DIMENSION_MISMATCH = 2,
  MH_ERROR_SINGULAR_MATRIX = 3,
  MH_ERROR_DEGENERATE_DEGREE = 4, /* dynamical degree not above 1 */
  MH_ERROR_HYPOTHESIS = 5,        /* theorem hypotheses not met */
  MH_ERROR_BUDGET_EXCEEDED = 6,   /* factorization or search budget ran out */
  MH_ERROR_NONCONVERGENCE = 7,
  MH_ERROR_INTERNAL = 8
} mh_status;

typedef struct mh_matrix mh_matrix;
typedef struct mh_point mh_point;

const char* mh_version(void);
const char* mh_status_name(mh_status status);
const char* mh_last_error_message(void);
void mh_string_free(char* s);

/* Matrix JSON: {"n": 2, "rows": [[2,1],[1,1]]}; entries are integers or
 * decimal strings beyond the native range. */
mh_status mh_matrix_from_json(const char* json, mh_matrix** out);
mh_status mh_matrix_to_json(const mh_matrix* m, char** json_out);
void mh_matrix_free(mh_matrix* m);

/* Point JSON: {"coords": ["2/3","-5","1"]} or
 * {"signs": [1,-1], "primes": {"2": [5,-8]}}. */
mh_status mh_point_from_json(const char* json, mh_point** out);
mh_status mh_point_to_json(const mh_point* p, char** json_out);
void mh_point_free(mh_point* p);

/* Spectral report: {"matrix":..., "det":..., "backward_matrix":...,
 * "spectral": {"charpoly":..., "delta":..., "delta_radius":..., "ell":...,
 * "ell_provenance":..., "rotation_period":...}}. */
mh_status mh_analyze(const mh_matrix* m, char** json_out);

/* Weil height of the point (natural log scale). exact_zero is 1 when every
 * coordinate is a root of unity, decided symbolically. */
mh_status mh_weil_height(const mh_point* p, double* value, int* exact_zero);

/* which: "forward" | "backward" | "total".
 * options_json (may be NULL): {"n_max":60, "window":8, "tolerance":1e-9,
 * "force_iterative":false}.
 * Result: {"value":..., "method":..., "n_max":..., "window":...,
 * "uncertainty":..., "exact_zero":...}. */
mh_status mh_canonical_height(const mh_matrix* m, const mh_point* p, const char* which,
                              const char* options_json, char** json_out);

/* identity: "functional-eq" | "recurrence" | "lower-bound" |
 * "dim2-zero-height" | "fibration-semiconjugacy" | "preperiodic".
 * Result carries lhs/rhs/residual/tolerance/passed/hypotheses_met. */
mh_status mh_verify(const mh_matrix* m, const mh_point* p, const char* identity,
                    const char* options_json, char** json_out);

/* construction: "fibonacci" (uses options {"k":5}; matrix may be NULL) |
 * "forward" | "total" (options {"epsilon":0.01, "y_max":1000000,
 * "base_prime":2}). */
mh_status mh_gen_small(const mh_matrix* m, const char* construction, const char* options_json,
                       char** json_out);

/* Randomized property suites. options: {"seed":42, "parallel":1, "counts":
 * {"functional":100, "recurrence":50, "lower_bound":50, "zero_height":20,
 * "semiconjugacy":20}}. all_passed means every hypotheses-met case passed. */
mh_status mh_suite(const char* options_json, char** json_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MONOHEIGHT_H */
