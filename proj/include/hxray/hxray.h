#ifndef HXRAY_HXRAY_H
#define HXRAY_HXRAY_H

#include <stddef.h>
#include <stdint.h>

#if defined(HXRAY_BUILDING)
#define HX_API __attribute__((visibility("default")))
#else
#define HX_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hx_status {
  HX_OK = 0,
  HX_E_INVALID_ARGUMENT = 1,
  HX_E_DIMENSION = 2,
  HX_E_DOMAIN = 3,
  HX_E_QUADRATURE = 4,
  HX_E_IO = 5,
  HX_E_CONFIG = 6,
  HX_E_INCOMPATIBLE = 7,
  HX_E_NOT_INVERTIBLE = 8,
  HX_E_INTERNAL = 99
} hx_status;

/* Opaque handles. */
typedef struct hx_structure hx_structure;
typedef struct hx_operator hx_operator;

/* Message of the last failing call on this thread; never NULL. */
HX_API const char *hx_last_error(void);
/* Machine-readable reason string for a status code. */
HX_API const char *hx_status_reason(hx_status s);
HX_API const char *hx_version(void);

/* Structures. Generators are m matrices of size 2n x 2n, row-major, back to back. */
HX_API hx_status hx_structure_heisenberg(int n, hx_structure **out);
HX_API hx_status hx_structure_quaternionic(hx_structure **out);
HX_API hx_status hx_structure_custom(int n, int m, const double *generators, hx_structure **out);
HX_API void hx_structure_free(hx_structure *s);
HX_API hx_status hx_structure_dims(const hx_structure *s, int *n, int *m);

/* J_mu as a row-major 2n x 2n matrix. */
HX_API hx_status hx_j_map(const hx_structure *s, const double *mu, double *out);
/* (x1,u1)(x2,u2) */
HX_API hx_status hx_group_mul(const hx_structure *s, const double *x1, const double *u1, const double *x2,
                              const double *u2, double *x_out, double *u_out);
/* Point at arclength t of the unit-speed geodesic through base with data (nu, lambda). */
HX_API hx_status hx_geodesic_point(const hx_structure *s, const double *base_x, const double *base_u,
                                   const double *nu, const double *lambda, double t, double *x_out,
                                   double *u_out);
/* X-ray transform of the Gaussian e^{-a|x|^2 - b|u|^2} along one geodesic. */
HX_API hx_status hx_xray_gaussian(const hx_structure *s, double a, double b, const double *base_x,
                                  const double *base_u, const double *nu, const double *lambda,
                                  double *re, double *im);

/* *k receives mu.lambda / (2|lambda|^3) when it is an integer; *ok tells whether it is. */
HX_API hx_status hx_compatible(int m, const double *lambda, const double *mu, int *k, int *ok);

/* Multiplier operator truncated to degrees <= L. method: 0 auto, 1 loop quadrature, 2 closed form. */
HX_API hx_status hx_multiplier(const hx_structure *s, const double *nu, const double *lambda, const double *mu,
                               int L, int method, hx_operator **out);
/* Fourier transform at mu of the Gaussian e^{-a|x|^2 - b|u|^2}. */
HX_API hx_status hx_gft_gaussian(const hx_structure *s, double a, double b, const double *mu, int L,
                                 hx_operator **out);
/* Eigenvalues (L + 1 values) of the direction-averaged normal operator. */
HX_API hx_status hx_averaged_eigenvalues(int n, int k, double wnorm, int L, double *out);

HX_API hx_status hx_operator_dims(const hx_operator *op, int *n, int *L, int *dim);
/* Row-major dim x dim complex entries as interleaved (re, im). */
HX_API hx_status hx_operator_entries(const hx_operator *op, double *out);
HX_API hx_status hx_operator_save(const hx_operator *op, const char *path);
HX_API hx_status hx_operator_save_csv(const hx_operator *op, const char *path);
HX_API hx_status hx_operator_load(const char *path, hx_operator **out);
HX_API void hx_operator_free(hx_operator *op);

typedef struct hx_run_options {
  const char *out_dir; /* NULL keeps the config value */
  int has_seed;
  uint64_t seed;
  int threads; /* 0 keeps the config value */
  int emit_matrices;
  int write_files;
} hx_run_options;

HX_API void hx_run_options_init(hx_run_options *o);
/* Runs one subcommand on config text. *report receives the JSON report (free with
   hx_string_free; NULL on config errors). *exit_code is 0 pass, 1 tolerance failure,
   2 config or usage error. Returns HX_E_CONFIG for exit code 2. */
HX_API hx_status hx_run(const char *subcommand, const char *config_json, const hx_run_options *opts,
                        char **report, int *exit_code);
HX_API void hx_string_free(char *s);

#ifdef __cplusplus
}
#endif

#endif
