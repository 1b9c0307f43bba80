/*
 * vexp — variable-exponent function space kernel.
 *
 * C interface to the computation core: norms and modulars of variable
 * Lebesgue, mixed Lebesgue-sequence and variable Besov spaces, the Köthe
 * dual norm, the dyadic filter bank, and the property verification suites.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Every fallible call returns a vexp_status; on failure the thread-local
 * message from vexp_last_error() describes what went wrong. Handles are
 * immutable after creation and safe to share across threads.
 */

#ifndef VEXP_H
#define VEXP_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct vexp_grid vexp_grid;
typedef struct vexp_field vexp_field;     /* exponent field */
typedef struct vexp_func vexp_func;       /* grid function */
typedef struct vexp_seq vexp_seq;         /* function sequence */
typedef struct vexp_filters vexp_filters; /* dyadic filter bank */

typedef enum {
  VEXP_OK = 0,
  VEXP_ERR_NULLPTR = 1,
  VEXP_ERR_CONFIG = 2,
  VEXP_ERR_IO = 3,
  VEXP_ERR_GRID_MISMATCH = 4,
  VEXP_ERR_SPEC_OUT_OF_RANGE = 5,
  VEXP_ERR_NOT_IN_CLASS_P = 6,
  VEXP_ERR_BAD_BOUNDS = 7,
  VEXP_ERR_NON_FINITE = 8,
  VEXP_ERR_BRACKET_FAILURE = 9,
  VEXP_ERR_Q_PLUS_INFINITE = 10,
  VEXP_ERR_TOO_LARGE_FOR_BRUTE = 11,
  VEXP_ERR_NOT_NORMABLE = 12,
  VEXP_ERR_GRID_TOO_SMALL = 13,
  VEXP_ERR_INTERNAL = 14
} vexp_status;

typedef enum {
  VEXP_CLASS_P0 = 0,  /* exponents > 0 */
  VEXP_CLASS_P = 1,   /* exponents >= 1 */
  VEXP_CLASS_REAL = 2 /* unrestricted (smoothness weights) */
} vexp_field_class;

typedef enum { VEXP_METHOD_BRUTE = 0, VEXP_METHOD_ASCENT = 1 } vexp_method;

typedef enum {
  VEXP_FILTER_EXPONENTIAL = 0,
  VEXP_FILTER_QUINTIC = 1
} vexp_filter_shape;

typedef struct {
  double value;
  double modular_at_value;
  double bracket_lo;
  double bracket_hi;
  int iterations;
  double tolerance;
} vexp_norm_result;

typedef struct {
  double value;
  int method; /* vexp_method actually used */
  int starts;
  int iterations;
  double certificate_gap; /* NaN when no closed-form oracle exists */
} vexp_dual_result;

typedef struct {
  int exact_zero;
  double sup_value;
  double f_norm;
  double ratio;
} vexp_norming_report;

const char* vexp_version(void);
const char* vexp_status_name(vexp_status s);
/* thread-local message describing the most recent failure */
const char* vexp_last_error(void);
void vexp_string_free(char* s);

/* ------------------------------------------------------------------ grid */
vexp_status vexp_grid_create(double half_length, int n_points,
                             vexp_grid** out);
void vexp_grid_destroy(vexp_grid* g);
int vexp_grid_points(const vexp_grid* g);
double vexp_grid_dx(const vexp_grid* g);
double vexp_grid_half_length(const vexp_grid* g);

/* -------------------------------------------------------- exponent fields */
/* spec_json: {"kind":"constant"|"affine"|"table"|"random", ...}; infinite
 * exponents encoded as the JSON string "inf". */
vexp_status vexp_field_create_json(const vexp_grid* g, const char* spec_json,
                                   vexp_field_class cls, vexp_field** out);
vexp_status vexp_field_create_table(const vexp_grid* g, const double* values,
                                    size_t len, vexp_field_class cls,
                                    vexp_field** out);
void vexp_field_destroy(vexp_field* f);
vexp_status vexp_field_values(const vexp_field* f, double* out, size_t len);
double vexp_field_min(const vexp_field* f);
double vexp_field_max(const vexp_field* f); /* +inf when any entry is inf */
vexp_status vexp_field_conjugate(const vexp_field* f, vexp_field** out);

/* tag_out: 0 none, 1..3 the first condition that holds */
vexp_status vexp_check_normability(const vexp_field* p, const vexp_field* q,
                                   int* tag_out, char* witness_buf,
                                   size_t witness_cap);

vexp_status vexp_check_log_holder(const vexp_field* p, double c,
                                  double p_infinity, int* pass_out,
                                  double* worst_margin_out);
vexp_status vexp_field_random_log_holder(const vexp_grid* g, double lo,
                                         double hi, int bandwidth,
                                         uint64_t seed, vexp_field** out);
/* the constant the generated field is guaranteed to pass the check with */
vexp_status vexp_field_log_holder_constant(const vexp_field* f, double* c_out,
                                           double* p_infinity_out);

/* --------------------------------------------------------- grid functions */
/* im may be NULL for real data */
vexp_status vexp_func_create(const vexp_grid* g, const double* re,
                             const double* im, size_t len, vexp_func** out);
void vexp_func_destroy(vexp_func* f);
size_t vexp_func_size(const vexp_func* f);
int vexp_func_is_real(const vexp_func* f);
/* either output pointer may be NULL */
vexp_status vexp_func_values(const vexp_func* f, double* re_out,
                             double* im_out, size_t len);
vexp_status vexp_integrate(const vexp_func* f, double* out);
vexp_status vexp_pairing_l1(const vexp_func* f, const vexp_func* g,
                            double* out);
/* kind: 0 smooth, 1 bump, 2 spike */
vexp_status vexp_func_random(const vexp_grid* g, int kind, double amplitude,
                             uint64_t seed, vexp_func** out);
/* CSV: one value per line, complex entries as "re,im" */
vexp_status vexp_func_load_csv(const vexp_grid* g, const char* path,
                               vexp_func** out);
vexp_status vexp_func_save_csv(const vexp_func* f, const char* path);

/* -------------------------------------------------------------- sequences */
vexp_status vexp_seq_create(const vexp_grid* g, vexp_seq** out);
void vexp_seq_destroy(vexp_seq* s);
vexp_status vexp_seq_push(vexp_seq* s, const vexp_func* term);
size_t vexp_seq_terms(const vexp_seq* s);
vexp_status vexp_seq_term(const vexp_seq* s, size_t index, vexp_func** out);
vexp_status vexp_seq_project(const vexp_seq* s, int N, vexp_seq** out);
/* path may be a single CSV (one column per term) or a directory of
 * term_0001.csv files */
vexp_status vexp_seq_load_csv(const vexp_grid* g, const char* path,
                              vexp_seq** out);
vexp_status vexp_seq_save_csv(const vexp_seq* s, const char* path);
vexp_status vexp_seq_pairing(const vexp_seq* f, const vexp_seq* g,
                             double* out);

/* ------------------------------------------------------ norms and modulars */
vexp_status vexp_modular_lp(const vexp_field* p, const vexp_func* f,
                            double* out);
vexp_status vexp_luxemburg_norm(const vexp_field* p, const vexp_func* f,
                                double tol, vexp_norm_result* out);
/* per_term may be NULL; otherwise it receives vexp_seq_terms(f) entries */
vexp_status vexp_mixed_modular_p1(const vexp_field* p, const vexp_field* q,
                                  const vexp_seq* f, double tol_inner,
                                  double* total_out, double* per_term);
vexp_status vexp_mixed_modular_p1a(const vexp_field* p, const vexp_field* q,
                                   const vexp_seq* f, double tol_inner,
                                   double* out);
vexp_status vexp_mixed_norm(const vexp_field* p, const vexp_field* q,
                            const vexp_seq* f, double tol_inner,
                            double tol_outer, vexp_norm_result* out);
vexp_status vexp_lqminus_norm(const vexp_field* p, double q_minus,
                              const vexp_seq* f, double tol, double* out);

/* ----------------------------------------------------------------- duality */
/* maximizer_out may be NULL */
vexp_status vexp_kothe_dual_norm(const vexp_field* p, const vexp_field* q,
                                 const vexp_seq* g, vexp_method method,
                                 double tol, vexp_dual_result* out,
                                 vexp_seq** maximizer_out);
vexp_status vexp_dual_tail_norm(const vexp_field* p, const vexp_field* q,
                                const vexp_seq* g, int N, vexp_method method,
                                double tol, double* out);
vexp_status vexp_norming_check(const vexp_field* p, const vexp_field* q,
                               const vexp_seq* f, vexp_method method,
                               double tol, vexp_norming_report* out);

/* ------------------------------------------------------------------- besov */
vexp_status vexp_filters_create(const vexp_grid* g, vexp_filter_shape shape,
                                vexp_filters** out);
void vexp_filters_destroy(vexp_filters* f);
int vexp_filters_nu_max(const vexp_filters* f);
/* CSV rows: signed_mode, low_pass, band_1, ..., band_nu_max */
vexp_status vexp_filters_export_csv(const vexp_filters* f, const char* path);
vexp_status vexp_analyze(const vexp_func* f, const vexp_field* s,
                         const vexp_filters* filters, vexp_seq** out);
vexp_status vexp_synthesize(const vexp_seq* bands, const vexp_field* s,
                            const vexp_filters* filters, vexp_func** out);
vexp_status vexp_besov_norm(const vexp_func* f, const vexp_field* s,
                            const vexp_field* p, const vexp_field* q,
                            const vexp_filters* filters, double tol_inner,
                            double tol_outer, vexp_norm_result* out);

/* ---------------------------------------------------------------- verify */
/* config_json mirrors the CLI config file:
 *   {"grid":{"L":2.0,"n_points":1024},
 *    "tolerances":{"inner":1e-10,"outer":1e-8},
 *    "seed":42,"samples":50,"suites":["all"],"mutate":"none"}
 * On success *report_csv_out is a malloc'd CSV (free with vexp_string_free)
 * and *failures_out counts failing property samples. */
vexp_status vexp_verify_run(const char* config_json, char** report_csv_out,
                            int* failures_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* VEXP_H */
