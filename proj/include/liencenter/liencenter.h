/* C interface to the liencenter engine.
 *
 * Every call returns an lc_status. On failure lc_last_error() describes the
 * problem for the calling thread. Strings handed out through char** must be
 * released with lc_string_free. */
#ifndef LIENCENTER_H
#define LIENCENTER_H

#include <stddef.h>

#if defined(_WIN32)
#define LC_API __declspec(dllexport)
#else
#define LC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct lc_system lc_system;

typedef enum lc_status {
  LC_OK = 0,
  LC_ERR_PARSE = 1,
  LC_ERR_INVALID_ARGUMENT = 2,
  LC_ERR_DOMAIN = 3,
  LC_ERR_NONCONVERGENCE = 4,
  LC_ERR_STEP_UNDERFLOW = 5,
  LC_ERR_MAX_STEPS = 6,
  LC_ERR_ESCAPE = 7,
  LC_ERR_NO_RETURN = 8,
  LC_ERR_INCONCLUSIVE = 9,
  LC_ERR_INTERNAL = 10
} lc_status;

typedef enum lc_verdict {
  LC_GLOBAL_CENTER_LINEAR = 0,
  LC_GLOBAL_CENTER_NILPOTENT = 1,
  LC_NOT_GLOBAL_CENTER = 2,
  LC_NUMERIC_INCONCLUSIVE = 3
} lc_verdict;

typedef struct lc_tolerance {
  double tol_rel;
  size_t samples;
  int use_shortcuts;
} lc_tolerance;

typedef struct lc_integrator {
  double rel_tol;
  double abs_tol;
  double event_tol;
  double escape_radius;
  double max_time;
  size_t max_steps;
} lc_integrator;

LC_API void lc_tolerance_default(lc_tolerance* out);
LC_API void lc_integrator_default(lc_integrator* out);

LC_API const char* lc_version(void);
LC_API const char* lc_status_name(lc_status status);
/* Message of the last failed call on this thread, "" if none. */
LC_API const char* lc_last_error(void);
/* Byte offset of the last parse error on this thread, -1 otherwise. */
LC_API long lc_last_error_offset(void);
LC_API void lc_string_free(char* s);

/* x' = y, y' = -g(x) - f(x) y from polynomial text such as "x + 1/2x^3". */
LC_API lc_status lc_system_parse(const char* f, const char* g, lc_system** out);
/* x' = y, y' = -x - a x^{2k+1} - x y - b x^l y; a and b are rationals as text. */
LC_API lc_status lc_system_odd_family(int k, int l, const char* a, const char* b, lc_system** out);
LC_API void lc_system_free(lc_system* sys);
LC_API lc_status lc_system_describe(const lc_system* sys, char** out);

/* Tolerance and integrator pointers may be NULL for defaults. */
LC_API lc_status lc_check(const lc_system* sys, const lc_tolerance* tol, lc_verdict* verdict,
                          char** report_json);
LC_API lc_status lc_classify_infinity(const lc_system* sys, char** json);
LC_API lc_status lc_verify(const lc_system* sys, const lc_tolerance* tol, const lc_integrator* cfg,
                           const double* seeds, size_t n_seeds, lc_verdict* verdict,
                           int* oracle_conflict, char** report_json);
LC_API lc_status lc_portrait(const lc_system* sys, const double* seeds, size_t n_seeds,
                             unsigned disc_px, int include_infinity, unsigned turns, char** svg);
LC_API lc_status lc_family_quintic(const lc_system* sys, char** json);
LC_API lc_status lc_family_odd(int k, int l, const char* a, const char* b, const lc_tolerance* tol,
                               char** json);
LC_API lc_status lc_return_map(const lc_system* sys, double y0, const lc_integrator* cfg,
                               double* y_ret, double* t_ret);
LC_API lc_status lc_trajectory_csv(const lc_system* sys, double x0, double y0, double t0, double t1,
                                   const lc_integrator* cfg, char** csv);

#ifdef __cplusplus
}
#endif

#endif
