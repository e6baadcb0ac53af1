#ifndef QJK_QJK_H
#define QJK_QJK_H

/* C interface to the qjk library.
 *
 * Every fallible call returns a qjk_status; on failure qjk_last_error() gives a
 * message for the calling thread.  Objects are opaque handles released with the
 * matching *_free function (NULL is accepted).  Strings returned through char**
 * are heap allocated and released with qjk_string_free.  Rendered documents
 * print every floating point number with 17 significant digits and do not
 * depend on the thread count. */

#include <stddef.h>

#if defined(_WIN32)
#define QJK_API __declspec(dllexport)
#else
#define QJK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qjk_status {
  QJK_OK = 0,
  QJK_ERROR_DOMAIN = 1,    /* argument outside a documented precondition */
  QJK_ERROR_PARSE = 2,     /* malformed braid text */
  QJK_ERROR_SCHEMA = 3,    /* knot table violates its schema */
  QJK_ERROR_INTEGRITY = 4, /* an identity that must hold failed */
  QJK_ERROR_NUMERIC = 5,   /* non-finite values or numeric collapse */
  QJK_ERROR_IO = 6,
  QJK_ERROR_INTERNAL = 7
} qjk_status;

typedef enum qjk_precision {
  QJK_PRECISION_DOUBLE = 0,
  QJK_PRECISION_EXTENDED = 1,
  QJK_PRECISION_AUTO = 2 /* volume only: double up to N = 60, extended above */
} qjk_precision;

typedef enum qjk_operator { QJK_OPERATOR_JONES = 0, QJK_OPERATOR_KASHAEV = 1, QJK_OPERATOR_BOTH = 2 } qjk_operator;

typedef enum qjk_format { QJK_FORMAT_JSON = 0, QJK_FORMAT_CSV = 1 } qjk_format;

typedef enum qjk_fit_model { QJK_FIT_NONE = 0, QJK_FIT_PLAIN = 1, QJK_FIT_CORRECTED = 2 } qjk_fit_model;

typedef struct qjk_braid qjk_braid;
typedef struct qjk_table qjk_table;
typedef struct qjk_enhanced qjk_enhanced;
typedef struct qjk_series qjk_series;

QJK_API const char* qjk_version(void);
QJK_API const char* qjk_status_name(qjk_status status);
/* Message of the last failed call on this thread; "" after a success. */
QJK_API const char* qjk_last_error(void);
QJK_API void qjk_string_free(char* text);

/* Default relative tolerance base; thresholds scale it by magnitude and size. */
QJK_API double qjk_default_tolerance(void);

/* ---- braids ---------------------------------------------------------- */

QJK_API qjk_status qjk_braid_parse(const char* text, qjk_braid** out);
QJK_API qjk_status qjk_braid_create(int strands, const int* letters, size_t count, qjk_braid** out);
QJK_API void qjk_braid_free(qjk_braid* braid);
/* Any output pointer may be NULL. */
QJK_API qjk_status qjk_braid_info(const qjk_braid* braid, int* strands, size_t* length, int* writhe, int* components);
QJK_API qjk_status qjk_braid_format(const qjk_braid* braid, char** out);

/* ---- knot tables ----------------------------------------------------- */

/* path NULL: $QJK_KNOT_TABLE if set, otherwise the installed table. */
QJK_API qjk_status qjk_table_load(const char* path, qjk_table** out);
QJK_API void qjk_table_free(qjk_table* table);
QJK_API size_t qjk_table_size(const qjk_table* table);
/* NULL when index is out of range; valid while the table lives. */
QJK_API const char* qjk_table_name(const qjk_table* table, size_t index);
QJK_API qjk_status qjk_table_braid(const qjk_table* table, const char* name, qjk_braid** out);
QJK_API qjk_status qjk_table_default_path(char** out);

/* ---- enhanced Yang-Baxter operators and invariants -------------------- */

/* Builds R, R^-1 and mu for one N and verifies the enhancement axioms.  kind is
 * JONES or KASHAEV; tolerance <= 0 selects the default. */
QJK_API qjk_status qjk_enhanced_create(int n, qjk_operator kind, qjk_precision precision, double tolerance,
                                       qjk_enhanced** out);
QJK_API void qjk_enhanced_free(qjk_enhanced* op);

typedef struct qjk_eval_options {
  int threads;        /* worker threads, >= 1 */
  int probe;          /* nonzero: evaluate first-strand inputs {0, N-1} only */
  int enforce_scalar; /* nonzero: a non-scalar endomorphism is QJK_ERROR_INTEGRITY */
  double tolerance;   /* <= 0 selects the default */
} qjk_eval_options;

QJK_API void qjk_eval_options_init(qjk_eval_options* options);

typedef struct qjk_invariant_value {
  double re;
  double im;
  double scalarness; /* relative deviation of the endomorphism from a scalar */
  int writhe;
  int components;
  int n;
} qjk_invariant_value;

/* options NULL selects the defaults. */
QJK_API qjk_status qjk_invariant(const qjk_enhanced* op, const qjk_braid* braid, const qjk_eval_options* options,
                                 qjk_invariant_value* out);

/* ---- volume growth --------------------------------------------------- */

typedef struct qjk_volume_options {
  int threads;
  qjk_precision precision;
  qjk_operator kind;     /* operator for the series, JONES or KASHAEV */
  int cross_check_max_n; /* the other operator at N = n_min and min(n_max, this); 0 disables */
  double tolerance;
} qjk_volume_options;

QJK_API void qjk_volume_options_init(qjk_volume_options* options);

/* Series v_N = (2 pi / N) log|J_N| for a table entry.  Declared summands of a
 * connected sum are evaluated alongside for the additivity check. */
QJK_API qjk_status qjk_series_compute(const qjk_table* table, const char* knot, int n_min, int n_max,
                                      const qjk_volume_options* options, qjk_series** out);
QJK_API void qjk_series_free(qjk_series* series);
QJK_API size_t qjk_series_size(const qjk_series* series);
QJK_API qjk_status qjk_series_point(const qjk_series* series, size_t index, int* n, double* abs_j, double* v);

typedef struct qjk_fit {
  double limit;
  double log_coefficient;     /* a in v_N = V + a log(N)/N + b/N */
  double inverse_coefficient; /* b */
  double residual;            /* root mean square */
  int n_min;
  int n_max;
  int points;
} qjk_fit;

/* Fits points with n_lo <= N <= n_hi (a bound <= 0 is open) and attaches the
 * fit to the series for rendering.  QJK_FIT_NONE removes an attached fit. */
QJK_API qjk_status qjk_series_fit(qjk_series* series, qjk_fit_model model, int n_lo, int n_hi, qjk_fit* out);

/* CSV: N,absJ,v_N.  JSON: points, attached fit, reference data, cross checks
 * and the additivity check for connected sums. */
QJK_API qjk_status qjk_series_render(const qjk_series* series, qjk_format format, char** out);

/* ---- rendered reports ------------------------------------------------ */

/* checks: comma-separated names or "all".  table supplies the knots of the
 * agreement check (NULL: default table).  *all_pass (may be NULL) receives 1
 * when every check passed. */
QJK_API qjk_status qjk_verify_render(const char* checks, int n_min, int n_max, qjk_precision precision,
                                     double tolerance, int threads, const qjk_table* table, qjk_format format,
                                     char** out, int* all_pass);

/* kind JONES, KASHAEV or BOTH.  *consistent (may be NULL) receives 0 when BOTH
 * was requested and the two values differ beyond tolerance, 1 otherwise. */
QJK_API qjk_status qjk_invariant_render(const qjk_braid* braid, int n, qjk_operator kind, qjk_precision precision,
                                        const qjk_eval_options* options, qjk_format format, char** out,
                                        int* consistent);

/* Dense matrix of R (or R^-1) as [row, col, re, im] with row = output index. */
QJK_API qjk_status qjk_rmatrix_render(int n, qjk_operator kind, int inverse, qjk_precision precision,
                                      qjk_format format, char** out);

/* Relations for E and F(p) and the Cartan coincidence; p NaN means (N-1)/2. */
QJK_API qjk_status qjk_rep_check_render(int n, double p, qjk_precision precision, double tolerance, qjk_format format,
                                        char** out, int* all_pass);

#ifdef __cplusplus
}
#endif

#endif
