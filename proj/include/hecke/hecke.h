#ifndef HECKE_HECKE_H
#define HECKE_HECKE_H

#include <stddef.h>

#if defined(_WIN32)
#define HECKE_API __declspec(dllexport)
#else
#define HECKE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  HECKE_OK = 0,
  HECKE_EINVAL = 1,       /* bad argument, unknown name, malformed config */
  HECKE_EHYPOTHESIS = 2,  /* parameters violate the product formula's hypotheses */
  HECKE_ENUMERIC = 3,     /* a truncation or quadrature could not be certified */
  HECKE_EPOLE = 4,        /* evaluation at or on top of a pole */
  HECKE_ECAPACITY = 5,    /* coefficient table too short */
  HECKE_EINTERNAL = 6
} hecke_status;

typedef struct {
  double re, im;
} hecke_complex;

typedef struct hecke_pair hecke_pair;
typedef struct hecke_report hecke_report;

HECKE_API const char* hecke_version(void);
HECKE_API const char* hecke_status_name(hecke_status s);
/* Message of the last failing call on this thread; "" after a success. */
HECKE_API const char* hecke_last_error(void);

/* Built-in scenarios: "tau", "zeta", "sigma3", "sigma5", ... (odd l >= 3). */
HECKE_API size_t hecke_scenario_count(void);
HECKE_API const char* hecke_scenario_name(size_t i);

HECKE_API hecke_status hecke_pair_create(const char* scenario, hecke_pair** out);
HECKE_API void hecke_pair_destroy(hecke_pair* p);
HECKE_API const char* hecke_pair_name(const hecke_pair* p);
HECKE_API double hecke_pair_delta(const hecke_pair* p);
HECKE_API size_t hecke_pair_capacity(const hecke_pair* p);
/* side 0: phi, 1: psi. Exact integer coefficients are returned as doubles. */
HECKE_API hecke_status hecke_pair_coefficient(const hecke_pair* p, int side, size_t n, double* out);
/* phi(s) or psi(s), by direct summation or analytic continuation. */
HECKE_API hecke_status hecke_pair_evaluate(const hecke_pair* p, int side, hecke_complex s, hecke_complex* out);

typedef struct {
  hecke_complex u, v;
  int k;
  double x;
  double gamma;
  int has_abscissa; /* nonzero: use `abscissa` as the Perron line */
  double abscissa;
  double h;          /* finite-difference step */
  double tol;        /* identity tolerance; 0 = per-identity default */
  double series_tol; /* relative target for Riesz double sums */
} hecke_config;

HECKE_API hecke_status hecke_default_config(const char* scenario, hecke_config* out);

/* HECKE_OK or HECKE_EHYPOTHESIS; the message names every violated inequality.
   `violations` (may be NULL) receives their number. Cheap: no series are summed. */
HECKE_API hecke_status hecke_check_hypotheses(const hecke_pair* p, const hecke_config* c, size_t* violations);

/* Identities: "id1", "id2", "id3", "equality1", "expresion1", "expression2", "s2". */
HECKE_API size_t hecke_identity_count(void);
HECKE_API const char* hecke_identity_name(size_t i);
HECKE_API hecke_status hecke_identity_default_tolerance(const char* identity, double* out);

HECKE_API hecke_status hecke_verify(const hecke_pair* p, const char* identity, const hecke_config* c,
                                    hecke_report** out);
HECKE_API void hecke_report_destroy(hecke_report* r);

HECKE_API const char* hecke_report_identity(const hecke_report* r);
HECKE_API const char* hecke_report_scenario(const hecke_report* r);
HECKE_API hecke_config hecke_report_config(const hecke_report* r);
HECKE_API hecke_complex hecke_report_lhs(const hecke_report* r);
HECKE_API hecke_complex hecke_report_rhs(const hecke_report* r);
HECKE_API double hecke_report_abs_residual(const hecke_report* r);
HECKE_API double hecke_report_rel_residual(const hecke_report* r);
HECKE_API double hecke_report_tolerance(const hecke_report* r);
HECKE_API double hecke_report_seconds(const hecke_report* r);
HECKE_API int hecke_report_pass(const hecke_report* r);
/* Per-term breakdown and the truncation/quadrature settings used. */
HECKE_API size_t hecke_report_term_count(const hecke_report* r);
HECKE_API const char* hecke_report_term_name(const hecke_report* r, size_t i);
HECKE_API hecke_complex hecke_report_term_value(const hecke_report* r, size_t i);
HECKE_API size_t hecke_report_setting_count(const hecke_report* r);
HECKE_API const char* hecke_report_setting_name(const hecke_report* r, size_t i);
HECKE_API double hecke_report_setting_value(const hecke_report* r, size_t i);

/* G_{g,k} (side 0) or G_{f,k} (side 1) at c->x. route 0: direct Meijer series,
   1: Riesz sum minus the residue contour. tol is relative; tail may be NULL. */
HECKE_API hecke_status hecke_g_series(const hecke_pair* p, const hecke_config* c, int side, int route, double tol,
                                      hecke_complex* value, double* tail);
/* The Riesz double sum R_k(x) at c->x. */
HECKE_API hecke_status hecke_riesz_sum(const hecke_pair* p, const hecke_config* c, hecke_complex* value);

#ifdef __cplusplus
}
#endif

#endif
