/*
 * lef - variational inference and maximum likelihood over the
 * lambda-exponential family (multivariate Student and limiting Gaussian
 * members), with closed-form moment-matching solvers, MALA-driven variants,
 * relaxed EM for mixtures, and a benchmark harness.
 *
 * C API: opaque handles plus integer status codes.  All array arguments are
 * row-major doubles owned by the caller.  Degrees of freedom nu may be
 * INFINITY to select the Gaussian branch.  Every function returning
 * lef_status sets the thread-local message readable via lef_last_error().
 */

#ifndef LEF_H
#define LEF_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LEF_API __declspec(dllexport)
#elif defined(__GNUC__)
#define LEF_API __attribute__((visibility("default")))
#else
#define LEF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef int lef_status;

enum {
  LEF_OK = 0,
  LEF_ERR_INVALID_ARGUMENT = 1,
  LEF_ERR_DIMENSION_MISMATCH = 2,
  LEF_ERR_NOT_POSITIVE_DEFINITE = 3,
  LEF_ERR_DOMAIN = 4,
  LEF_ERR_INCOMPATIBLE = 5,
  LEF_ERR_DEGENERATE = 6,
  LEF_ERR_DIVERGENT_INTEGRAL = 7,
  LEF_ERR_IO = 8,
  LEF_ERR_INTERNAL = 9
};

LEF_API const char* lef_version(void);
/* Message for the most recent failing call on this thread ("" if none). */
LEF_API const char* lef_last_error(void);

/* ------------------------------------------------------------------ */
/* Random streams (counter-based; equal (seed, stream) pairs reproduce
 * identical draws on any platform). */

typedef struct lef_rng lef_rng;

LEF_API lef_status lef_rng_create(uint64_t seed, uint64_t stream, lef_rng** out);
LEF_API void lef_rng_destroy(lef_rng* rng);
LEF_API lef_status lef_rng_uniform(lef_rng* rng, double* out);
LEF_API lef_status lef_rng_normal(lef_rng* rng, double* out);

/* ------------------------------------------------------------------ */
/* Student / Gaussian family members. */

typedef struct lef_student lef_student;

/* sigma: d*d row-major symmetric positive definite scale matrix. */
LEF_API lef_status lef_student_create(size_t d, double nu, const double* mu, const double* sigma,
                                      lef_student** out);
LEF_API void lef_student_destroy(lef_student* p);
LEF_API lef_status lef_student_dim(const lef_student* p, size_t* out);
LEF_API lef_status lef_student_nu(const lef_student* p, double* out);
LEF_API lef_status lef_student_mu(const lef_student* p, double* out /* d */);
LEF_API lef_status lef_student_sigma(const lef_student* p, double* out /* d*d */);

LEF_API lef_status lef_student_log_density(const lef_student* p, const double* x, double* out);
LEF_API lef_status lef_student_grad_log_density(const lef_student* p, const double* x,
                                                double* out /* d */);
/* n samples written consecutively (n*d doubles). */
LEF_API lef_status lef_student_sample(const lef_student* p, size_t n, lef_rng* rng, double* out);

/* Renyi entropy H_alpha (alpha = 1 gives the Shannon entropy). */
LEF_API lef_status lef_student_renyi_entropy(const lef_student* p, double alpha, double* out);

/* Natural-parameter chart (finite nu only): theta1 is d, theta2 is d*d,
 * lambda = -2/(nu+d). */
LEF_API lef_status lef_student_natural(const lef_student* p, double* theta1, double* theta2,
                                       double* lambda);
LEF_API lef_status lef_student_from_natural(size_t d, double nu, const double* theta1,
                                            const double* theta2, lef_student** out);
LEF_API lef_status lef_log_partition(size_t d, double nu, const double* theta1,
                                     const double* theta2, double* out);

/* Escort of p under the exponent tied to the nu_q family
 * (alpha = 1 + 2/(nu_q + d)). */
LEF_API lef_status lef_student_escort(const lef_student* p, double nu_q, lef_student** out);
/* Escort first/second moments m1 (d) and m2 (d*d); requires compatibility. */
LEF_API lef_status lef_student_escort_moments(const lef_student* p, double nu_q, double* m1,
                                              double* m2);
LEF_API lef_status lef_student_from_escort_moments(size_t d, double nu, const double* m1,
                                                   const double* m2, lef_student** out);

/* Well-posedness margin nu_p + 2(nu_p+d)/(nu_q+d) - 2 (positive means the
 * escort has finite first and second moments). */
LEF_API lef_status lef_compatibility_margin(double nu_p, size_t d, double nu_q, double* out);

/* ------------------------------------------------------------------ */
/* Coupling and divergences. */

/* c_lambda(u, v); -HUGE_VAL when 1 + lambda <u,v> <= 0. */
LEF_API lef_status lef_coupling_eval(double lambda, size_t n, const double* u, const double* v,
                                     double* out);

/* Closed-form RD_alpha(pi, q) with alpha tied to the q family; KL for a
 * Gaussian q.  alpha_out may be NULL. */
LEF_API lef_status lef_renyi_divergence_closed(const lef_student* pi, const lef_student* q,
                                               double* value, double* alpha_out);
/* Monte Carlo estimate from n draws of pi; stderr_out may be NULL. */
LEF_API lef_status lef_renyi_divergence_mc(const lef_student* pi, const lef_student* q,
                                           double alpha, size_t n, lef_rng* rng, double* value,
                                           double* stderr_out);

/* ------------------------------------------------------------------ */
/* MALA targeting the escort pi^(alpha) of an unnormalized density oracle. */

typedef double (*lef_logpdf_fn)(const double* x, size_t d, void* ctx);
typedef void (*lef_grad_fn)(const double* x, size_t d, double* grad_out, void* ctx);

LEF_API lef_status lef_default_step(size_t d, double* out);

/* Runs n_steps MALA steps from x0; writes every post-accept/reject state
 * (n_steps*d doubles) and the acceptance rate.  scale is the d*d SPD matrix A
 * of the proposal; step is sigma_d^2. */
LEF_API lef_status lef_mala_chain(size_t d, lef_logpdf_fn logpdf, lef_grad_fn grad, void* ctx,
                                  double alpha, size_t n_steps, const double* x0,
                                  const double* scale, double step, lef_rng* rng,
                                  double* states_out, double* acceptance_rate_out);

/* ------------------------------------------------------------------ */
/* Maximum likelihood and mixtures. */

/* Moment-matched fit of n points (n*d row-major); bound_out (optional)
 * receives psi_lambda(theta*), a lower bound on the mean log-likelihood. */
LEF_API lef_status lef_mle_moment_match(size_t d, double nu, size_t n, const double* data,
                                        lef_student** out, double* bound_out);

/* Online fit processing the stream in order; returns the final parameters. */
LEF_API lef_status lef_mle_online(size_t d, double nu, size_t n, const double* stream,
                                  const lef_student* init, lef_student** out);

typedef struct lef_mixture lef_mixture;

LEF_API lef_status lef_mixture_create(size_t j_count, size_t d, double nu, const double* weights,
                                      const double* mus /* j*d */, const double* sigmas /* j*d*d */,
                                      lef_mixture** out);
LEF_API void lef_mixture_destroy(lef_mixture* m);
LEF_API lef_status lef_mixture_size(const lef_mixture* m, size_t* j_count, size_t* d);
LEF_API lef_status lef_mixture_weights(const lef_mixture* m, double* out);
LEF_API lef_status lef_mixture_component(const lef_mixture* m, size_t j, lef_student** out);
/* One relaxed EM step over n data points, in place. */
LEF_API lef_status lef_mixture_em_step(lef_mixture* m, size_t n, const double* data);
LEF_API lef_status lef_mixture_log_likelihood(const lef_mixture* m, size_t n, const double* data,
                                              double* out);
LEF_API lef_status lef_student_log_likelihood(const lef_student* p, size_t n, const double* data,
                                              double* out);

/* ------------------------------------------------------------------ */
/* Benchmark harness (the CLI is a thin wrapper over these). */

/* Runs the experiment described by the JSON config and writes records.csv
 * and summary.json under out_dir. */
LEF_API lef_status lef_experiment_run(const char* config_json, const char* out_dir);

/* Writes the fig1 density CSVs and summary under out_dir. */
LEF_API lef_status lef_fig1_write(const char* out_dir);

/* Aggregates summary.json files into the medians table.  *out is allocated
 * by the library; free it with lef_string_free. */
LEF_API lef_status lef_table(size_t n_paths, const char* const* paths, char** out);

/* Runs the oracle suite and returns the report text; *all_pass is 1 when
 * every check passed.  phi_bias is a verification hook added to phi_lambda
 * inside the Fenchel-Young check (pass 0 for normal operation). */
LEF_API lef_status lef_validate(double phi_bias, char** report, int* all_pass);

LEF_API void lef_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* LEF_H */
