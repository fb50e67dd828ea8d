#ifndef DULAC_H
#define DULAC_H

#include <stddef.h>

#if defined(_WIN32) && defined(DULAC_BUILD)
#define DULAC_API __declspec(dllexport)
#elif defined(_WIN32)
#define DULAC_API __declspec(dllimport)
#else
#define DULAC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes; values match the library's internal error codes. */
typedef enum dulac_status {
  DULAC_OK = 0,
  DULAC_PARSE_ERROR = 1,
  DULAC_EXPONENT_NOT_IN_SEMIGROUP,
  DULAC_NON_UNIT_SLOPE,
  DULAC_NOT_NORMALIZED,
  DULAC_NOT_HYPERBOLIC,
  DULAC_RESONANT_COEFFICIENT,
  DULAC_ITERATION_BUDGET_EXCEEDED,
  DULAC_ORDER_TOO_LOW,
  DULAC_DOMAIN_ERROR,
  DULAC_INVALID_RHO,
  DULAC_EVAL_DOMAIN_ERROR,
  DULAC_NOT_CONVERGED,
  DULAC_DECAY_HYPOTHESIS_VIOLATED,
  DULAC_GROWTH_BOUND_VIOLATED,
  DULAC_INSUFFICIENT_DATA,
  DULAC_PRECONDITION_VIOLATED,
  DULAC_INVALID_ARGUMENT,
  DULAC_INTERNAL_ERROR = 100
} dulac_status;

typedef enum dulac_algorithm { DULAC_LEVEL_SOLVER = 0, DULAC_PICARD = 1 } dulac_algorithm;

typedef struct dulac_series dulac_series;
typedef struct dulac_linearization dulac_linearization;
typedef struct dulac_germ dulac_germ;
typedef struct dulac_region dulac_region;

typedef struct dulac_profile {
  double beta_re, beta_im;
  double eps;
  int k;
  double R; /* cut: Re zeta >= R */
} dulac_profile;

typedef struct dulac_grid_row {
  double re, im;
  double phi_re, phi_im;
  long n_used;
  double tail_bound;
  double residual; /* |phi(f(zeta)) - phi(zeta) - beta| */
  int in_region;
  int converged;
  int step_bound_ok;
  int status; /* DULAC_OK or the failure at this point */
} dulac_grid_row;

typedef struct dulac_decay_report {
  double slope, intercept;
  double beta_n, beta_next; /* beta_next is 0 when phi has no further level */
  int usable;
  int exact; /* every residual below the noise floor */
  int pass;  /* slope <= -beta_n + 0.1 */
} dulac_decay_report;

typedef struct dulac_homological {
  double re, im;
  double psi_re, psi_im;
  long n_used;
  double tail_bound;
  double residual;
  int residual_ok;
} dulac_homological;

typedef struct dulac_invariance {
  long violations;
  double worst_margin;
  double cut;
  char* csv; /* re,im,bound_margin,rect_ok,region_ok; free with dulac_string_free */
} dulac_invariance;

DULAC_API const char* dulac_version(void);
DULAC_API const char* dulac_status_name(int status);
/* Message of the last failure on the calling thread, "" if none. */
DULAC_API const char* dulac_last_error(void);
/* Byte offset of the last parse error on the calling thread, -1 otherwise. */
DULAC_API long dulac_last_error_offset(void);
DULAC_API void dulac_string_free(char* s);

/* Series in the JSON exchange format. */
DULAC_API int dulac_series_parse(const char* json, dulac_series** out);
DULAC_API int dulac_series_truncate(const dulac_series* s, const char* order, dulac_series** out);
/* rounded != 0 rounds coefficients to 1e-9 for byte comparison. */
DULAC_API int dulac_series_to_json(const dulac_series* s, int rounded, char** out);
DULAC_API int dulac_series_evaluate(const dulac_series* s, double re, double im, double* out_re, double* out_im);
DULAC_API int dulac_series_is_real(const dulac_series* s, double tol, int* out);
DULAC_API void dulac_series_free(dulac_series* s);

DULAC_API int dulac_linearize(const dulac_series* f, dulac_algorithm algorithm, dulac_linearization** out);
DULAC_API int dulac_linearization_json(const dulac_linearization* r, char** out);
DULAC_API int dulac_linearization_phi(const dulac_linearization* r, dulac_series** out);
/* residual_zero is 1 when the conjugacy residual vanishes at the truncation order. */
DULAC_API int dulac_linearization_info(const dulac_linearization* r, double* beta_re, double* beta_im, int* levels,
                                       double* residual_max, int* residual_zero);
DULAC_API void dulac_linearization_free(dulac_linearization* r);

/* phi_n: head plus the first n levels of phi. */
DULAC_API int dulac_partial_sum(const dulac_series* phi, int n, dulac_series** out);
/* Exponent of level n of phi (level 0 is the head, exponent 0). */
DULAC_API int dulac_level_exponent(const dulac_series* phi, int n, double* out);

DULAC_API int dulac_germ_parse(const char* expr, const dulac_profile* profile, dulac_germ** out);
DULAC_API int dulac_germ_from_series(const dulac_series* f, const dulac_profile* profile, dulac_germ** out);
DULAC_API int dulac_germ_eval(const dulac_germ* f, double re, double im, double* out_re, double* out_im);
DULAC_API int dulac_germ_is_translation(const dulac_germ* f, int* out);
DULAC_API void dulac_germ_free(dulac_germ* f);

DULAC_API int dulac_region_parse(const char* json, dulac_region** out);
DULAC_API int dulac_region_quad(double C, double R, dulac_region** out);
DULAC_API int dulac_region_contains(const dulac_region* r, double re, double im, int* out);
DULAC_API int dulac_region_to_json(const dulac_region* r, char** out);
DULAC_API void dulac_region_free(dulac_region* r);

/* Grid spec "re0:re1:steps,im0:im1:steps"; region may be NULL. Per-point
   failures are reported in the rows, not as the return value. */
DULAC_API int dulac_koenigs_grid(const dulac_germ* f, const char* grid, double tol, const dulac_region* region,
                                 long max_n, dulac_grid_row** rows, size_t* count);
DULAC_API void dulac_grid_rows_free(dulac_grid_row* rows);

/* Samples invariance of the region under f; search != 0 doubles the cut
   from the profile cut until no violations remain. */
DULAC_API int dulac_check_invariance(const dulac_germ* f, const dulac_region* region, int samples,
                                     unsigned long long seed, int search, dulac_invariance* out);

/* Decay of |phi(zeta) - phi_n(zeta)| along the grid, phi_n from the formal phi. */
DULAC_API int dulac_decay(const dulac_germ* f, const dulac_series* phi, int n, const char* grid, double tol, long max_n,
                          dulac_decay_report* out);

/* psi = -sum h(f^n(zeta)) on every grid point; h is an expression in zeta. */
DULAC_API int dulac_solve_homological(const dulac_germ* f, const char* h_expr, double alpha, const char* grid,
                                      double tol, long max_n, dulac_homological** rows, size_t* count);
DULAC_API void dulac_homological_free(dulac_homological* rows);

/* Parses "p/q", an integer or a decimal. */
DULAC_API int dulac_parse_number(const char* text, double* out);
/* Evaluates a constant expression such as "2+3*pi*i". */
DULAC_API int dulac_parse_complex(const char* text, double* re, double* im);

#ifdef __cplusplus
}
#endif

#endif
