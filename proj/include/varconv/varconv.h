/* C API for the varconv library: convolution products of probability
 * measures on Z, variation/oscillation norms, spectral diagnostics, and the
 * cyclic-shift verification harness. Handles are opaque; every function
 * returns a vc_status and reports details through vc_last_error(). */
#ifndef VARCONV_VARCONV_H
#define VARCONV_VARCONV_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vc_status {
  VC_OK = 0,
  VC_ERR_CONFIG = 1,       /* bad parameters / config */
  VC_ERR_INPUT = 2,        /* unreadable or malformed input data */
  VC_ERR_PRECONDITION = 3, /* a theorem hypothesis failed its check */
  VC_ERR_INTERNAL = 4
} vc_status;

typedef struct vc_measure vc_measure;
typedef struct vc_family vc_family;

/* Message for the most recent failure on this thread. */
const char* vc_last_error(void);
/* Frees strings returned through char** out-parameters. */
void vc_string_free(char* s);

/* ---- measures ---- */
vc_status vc_measure_create(const int64_t* points, const double* masses, size_t count,
                            vc_measure** out);
vc_status vc_measure_from_tsv(const char* path, vc_measure** out);
vc_status vc_measure_to_tsv(const vc_measure* mu, const char* path);
void vc_measure_free(vc_measure* mu);

int64_t vc_measure_offset(const vc_measure* mu);
size_t vc_measure_size(const vc_measure* mu);
/* Copies the dense weights; buf must hold vc_measure_size(mu) doubles. */
vc_status vc_measure_weights(const vc_measure* mu, double* buf, size_t len);

vc_status vc_convolve(const vc_measure* a, const vc_measure* b, vc_measure** out);
vc_status vc_reflect(const vc_measure* mu, vc_measure** out);
vc_status vc_symmetrize(const vc_measure* mu, vc_measure** out);
vc_status vc_moment(const vc_measure* mu, double p, double* out);
vc_status vc_expectation(const vc_measure* mu, double* out);
vc_status vc_is_strictly_aperiodic(const vc_measure* mu, int* out);
vc_status vc_coset_concentration(const vc_measure* mu, int beta_max, double* value,
                                 int* beta, int* alpha);

/* ---- measure families ----
 * spec: {"family": "lazy-walk"|"remark19"|"explicit", "params": {...}} */
vc_status vc_family_from_json(const char* json, vc_family** out);
void vc_family_free(vc_family* fam);
vc_status vc_family_factor(const vc_family* fam, int i, vc_measure** out);
vc_status vc_family_prefix_product(const vc_family* fam, int n, vc_measure** out);

/* ---- sequence norms ----
 * witness may be NULL; otherwise witness_cap slots are filled and the
 * actual length stored in *witness_len. */
vc_status vc_variation_norm(const double* xs, size_t n, double rho, double* value,
                            size_t* witness, size_t witness_cap, size_t* witness_len);
vc_status vc_variation_norm_bruteforce(const double* xs, size_t n, double rho, double* value);
vc_status vc_oscillation_norm(const double* xs, size_t n, const int64_t* breakpoints,
                              size_t n_breakpoints, double s, double* value);
vc_status vc_two_norm(const double* xs, size_t n, double* out);

/* ---- spectral ---- */
/* CSV "t,re,im,abs" per node, 17 significant digits. */
vc_status vc_spectrum_csv(const vc_measure* mu, size_t grid_size, char** csv);
vc_status vc_gaussian_decay(const vc_measure* mu, size_t grid_size, double* best_c,
                            int* holds, double* worst_node);
vc_status vc_lemma132_ratio(const vc_family* fam, int n, size_t grid_size, double c,
                            double* out);

/* ---- dyadic decomposition ----
 * CSV table of empirical Lemma-style constants per (j, k). */
vc_status vc_decompose_csv(const char* family_json, int k, int j_min, int j_max,
                           size_t grid_size, int full_sweep, uint64_t seed, char** csv);

/* ---- verification harness ----
 * experiment: "theorem17" | "theorem133" | "theorem141".
 * config_json: {"family":..., "M":..., "k_max":..., "s":..., "trials":...,
 *               "seed":..., "grid":..., "threads":...}.
 * Returns the report as JSON, and optionally the plotting CSV. */
vc_status vc_verify_json(const char* experiment, const char* config_json,
                         int with_timestamp, char** report_json, char** report_csv);

/* Slowly-mixing family diagnostics; family_json must be a remark19 spec. */
vc_status vc_explore_counterexample_json(const char* family_json, int n_max,
                                         char** report_json);

#ifdef __cplusplus
}
#endif

#endif
