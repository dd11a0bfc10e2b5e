/* Public C interface of the slowsde shared library.
 *
 * A two-dimensional SDE family whose strong approximation error can decay
 * arbitrarily slowly: smooth coefficient evaluation, chirp construction,
 * gated-clock dynamics, Monte Carlo error estimators, and analytic
 * lower-bound reports.
 *
 * Conventions: every function returns a status code; results travel through
 * out-parameters. String results are heap-allocated, owned by the caller,
 * and released with slowsde_free_string. On failure the thread-local message
 * from slowsde_last_error() describes the violated condition. Handles are
 * opaque; params handles are immutable and safe to share across threads.
 */
#ifndef SLOWSDE_H
#define SLOWSDE_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum slowsde_status {
    SLOWSDE_OK = 0,
    SLOWSDE_EINVAL = 1,       /* invalid argument or precondition */
    SLOWSDE_ECONSTRAINT = 2,  /* internal invariant violated */
    SLOWSDE_EQUADRATURE = 3,  /* quadrature failed to converge */
    SLOWSDE_EHORIZON = 4,     /* sequence horizon exceeded or required */
    SLOWSDE_ENOTFOUND = 5,    /* unknown key, tag, or file */
    SLOWSDE_EINTERNAL = 6     /* unexpected failure */
} slowsde_status;

typedef struct slowsde_params slowsde_params;
typedef struct slowsde_chirp slowsde_chirp;

const char* slowsde_last_error(void);
void slowsde_free_string(char* s);

/* Model parameters. Pass quad_tol <= 0 for the default quadrature tolerance.
 * Defaults mirror the reference configuration: T = 1.5, tau = 0.75,
 * eps_frac = tau2_frac = 0.8. */
/* Params from config text (keys T, tau, eps_frac, tau2_frac, quad_tol, all
 * optional; unrelated keys are ignored). NULL text means defaults. */
slowsde_status slowsde_params_create_kv(const char* config_text, slowsde_params** out);
slowsde_status slowsde_params_create(double T, double tau, double eps_frac, double tau2_frac,
                                     double quad_tol, slowsde_params** out);
void slowsde_params_destroy(slowsde_params* p);

/* Derived scalar by name: "T", "tau", "eps", "tau1", "tau2", "mu_norm",
 * "alpha". */
slowsde_status slowsde_params_get(const slowsde_params* p, const char* name, double* out);

/* Coefficient evaluation. */
slowsde_status slowsde_profile(const slowsde_params* p, double x, double* out);
slowsde_status slowsde_profile_slope(const slowsde_params* p, double x, double* out);
slowsde_status slowsde_gate(const slowsde_params* p, double x, double* out);
slowsde_status slowsde_gate_slope(const slowsde_params* p, double x, double* out);

/* Chirp phase functions. */
slowsde_status slowsde_chirp_zero(slowsde_chirp** out);
slowsde_status slowsde_chirp_single(double center, double eps_width, double T,
                                    slowsde_chirp** out);
void slowsde_chirp_destroy(slowsde_chirp* c);
slowsde_status slowsde_chirp_eval(const slowsde_chirp* c, double x, double* out);

/* Terminal value of the gated clock ODE for a frozen drive level. */
slowsde_status slowsde_clock_terminal(const slowsde_params* p, double level, int ode_steps,
                                      double* out);

/* One Euler path of the embedded system. xi may be NULL (zero offsets) or
 * point to dim values; state_out must hold dim values. clock_out and
 * integral_out receive the canonical (descaled, deshifted) components and
 * may be NULL. */
slowsde_status slowsde_euler_terminal(const slowsde_params* p, const slowsde_chirp* c, int steps,
                                      uint64_t seed, uint64_t stream, int dim, int brown_dim,
                                      double scale_c, const double* xi, double* state_out,
                                      double* clock_out, double* integral_out);

/* Exact terminal clock for a frozen integral value. */
slowsde_status slowsde_oracle_terminal(const slowsde_params* p, const slowsde_chirp* c,
                                       double frozen_integral, int ode_steps, double* out);

/* Super-level measure of |sin((x-c)/beta)| >= 1/2 on [c-1, c+1]; closed form
 * cross-checked against a grid oracle with grid_n cells. */
slowsde_status slowsde_sin_measure(double c, double beta, uint64_t grid_n, double* out);

/* Report builders. Config text uses the same key=value format as the CLI
 * config files; keys are documented in the README per command. `format` is
 * "csv" or "json" where present. */
slowsde_status slowsde_params_report_json(const slowsde_params* p, char** out);
slowsde_status slowsde_alpha_report_json(const slowsde_params* p, char** out);
slowsde_status slowsde_coeffs_table(const slowsde_params* p, double x_lo, double x_hi,
                                    uint64_t points, const char* format, char** out);
slowsde_status slowsde_lower_bound_json(const slowsde_params* p, double c_center, char** out);
/* CSV sweep of the analytic floor over window indices n = 1..n_max (c = 5n). */
slowsde_status slowsde_bound_table(const slowsde_params* p, uint64_t n_max, char** out);
slowsde_status slowsde_schedule_json(const slowsde_params* p, const char* config_text,
                                     char** out);
slowsde_status slowsde_simulate_table(const slowsde_params* p, const char* config_text,
                                      const char* format, char** out);
slowsde_status slowsde_optimal_error_json(const slowsde_params* p, const char* config_text,
                                          char** out);

/* Runs verification suites. tags_csv is a comma-separated list of suite tags
 * or "all". all_pass receives 1 when every assertion passed. */
slowsde_status slowsde_verify_json(const slowsde_params* p, const char* tags_csv, uint64_t seed,
                                   int threads, int* all_pass, char** out);

#ifdef __cplusplus
}
#endif

#endif /* SLOWSDE_H */
