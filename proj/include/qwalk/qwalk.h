#ifndef QWALK_QWALK_H
#define QWALK_QWALK_H

/* C interface to the qubit channel and quantum walk library.
 *
 * Every function returns a qw_status. On failure qw_last_error() describes
 * the most recent error on the calling thread. Handles are opaque and owned
 * by the caller; release them with the matching *_free function. Strings
 * returned through char** are released with qw_string_free.
 *
 * Vectors are double[3] in (x, y, z) order; 3x3 matrices are row-major
 * double[9]; complex 2x2 and 4x4 matrices are row-major interleaved
 * (re, im) pairs. */

#include <stddef.h>
#include <stdint.h>

#if defined(QWALK_BUILDING_LIBRARY)
#define QW_API __attribute__((visibility("default")))
#else
#define QW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qw_status {
  QW_OK = 0,
  QW_INVALID_ARGUMENT = 1,
  QW_PARSE_ERROR = 2,
  QW_NON_UNIQUE_FIXED_POINT = 3,
  QW_DEGENERATE = 4,
  QW_DEGREE_OVERFLOW = 5,
  QW_NOT_CONVERGED = 6,
  QW_INVALID_CHANNEL = 7,
  QW_INTERNAL = 99
} qw_status;

typedef enum qw_convention {
  QW_LEFT_ADJOINT = 0,
  QW_RIGHT_ADJOINT = 1
} qw_convention;

typedef enum qw_assumption {
  QW_ASSUMPTION_HOLDS = 0,
  QW_ASSUMPTION_FAILS_SPECTRAL_RADIUS_ONE = 1,
  QW_ASSUMPTION_NON_UNIQUE = 2
} qw_assumption;

typedef struct qw_channel qw_channel;
typedef struct qw_walk qw_walk;
typedef struct qw_lattice qw_lattice;

/* Density matrix [[alpha, beta], [conj(beta), 1 - alpha]]. */
typedef struct qw_state {
  double alpha;
  double beta_re;
  double beta_im;
} qw_state;

typedef struct qw_analysis {
  double v[3];
  qw_state rho_inf;
  double covariance[9];
  double spectral_radius;
  qw_assumption assumption;
  int fixed_point_unique;
} qw_analysis;

typedef struct qw_krsw_conditions {
  int applicable;
  int cond1;
  int cond2;
  int cond3;
  int completely_positive;
} qw_krsw_conditions;

/* One letter nu . sigma - center I over sites floor(n t0)+1 .. floor(n t1). */
typedef struct qw_letter {
  double nu[3];
  double center;
  double t0;
  double t1;
} qw_letter;

typedef struct qw_commutator_report {
  int holds;
  double per_site_error;
  double exact_scale;
  double approximate_scale;
  double discrepancy;
} qw_commutator_report;

QW_API const char* qw_last_error(void);
QW_API const char* qw_status_string(qw_status status);
QW_API void qw_string_free(char* s);

/* Channels */
QW_API qw_status qw_channel_parse(const char* json, qw_channel** out);
QW_API qw_status qw_channel_named(const char* name, const double* params,
                                  size_t count, qw_channel** out);
QW_API qw_status qw_channel_random_kraus(uint64_t seed, int count,
                                         qw_convention convention,
                                         qw_channel** out);
QW_API void qw_channel_free(qw_channel* ch);
/* 0 Kraus, 1 affine, 2 KRSW */
QW_API qw_status qw_channel_form(const qw_channel* ch, int* out);
QW_API qw_status qw_channel_to_json(const qw_channel* ch, char** out);
QW_API qw_status qw_channel_affine(const qw_channel* ch, double linear[9],
                                   double translation[3]);
QW_API qw_status qw_channel_apply(const qw_channel* ch, qw_state in,
                                  qw_state* out);
QW_API qw_status qw_channel_iterate(const qw_channel* ch, qw_state rho0,
                                    size_t k, qw_state* out);
QW_API qw_status qw_channel_choi(const qw_channel* ch, double out[32]);
/* Descending. */
QW_API qw_status qw_channel_choi_eigenvalues(const qw_channel* ch,
                                             double out[4]);
QW_API qw_status qw_channel_is_cp(const qw_channel* ch, double tolerance,
                                  int* out);
/* Only for channels given in KRSW form. */
QW_API qw_status qw_channel_krsw_conditions(const qw_channel* ch,
                                            qw_krsw_conditions* out);
QW_API qw_status qw_channel_fixed_point(const qw_channel* ch, double v[3]);
QW_API qw_status qw_channel_spectral_radius(const qw_channel* ch, double* out);
/* initial may be NULL; it is needed when the fixed point is not unique. */
QW_API qw_status qw_channel_analyze(const qw_channel* ch,
                                    const qw_state* initial, qw_analysis* out);

/* Walks. initial NULL starts at the stationary state. */
QW_API qw_status qw_walk_new(const qw_channel* ch, const qw_state* initial,
                             size_t n, qw_walk** out);
QW_API void qw_walk_free(qw_walk* w);
QW_API qw_status qw_walk_analysis(const qw_walk* w, qw_analysis* out);

/* Exact law of sum over the window of nu . sigma_k - center. */
QW_API qw_status qw_walk_distribution(const qw_walk* w, const double nu[3],
                                      double center, double t0, double t1,
                                      qw_lattice** out);
QW_API void qw_lattice_free(qw_lattice* l);
QW_API size_t qw_lattice_size(const qw_lattice* l);
QW_API double qw_lattice_value(const qw_lattice* l, size_t i);
QW_API double qw_lattice_weight(const qw_lattice* l, size_t i);

/* Raw moments 0..max_order (<= 12) into out[max_order + 1]. */
QW_API qw_status qw_walk_moments(const qw_walk* w, const double nu[3],
                                 double center, double t0, double t1,
                                 int max_order, double* out);
QW_API qw_status qw_walk_clt(const qw_walk* w, const double nu[3], double t,
                             double* ks_distance, double* target_variance);
QW_API qw_status qw_walk_lambda_n(const qw_walk* w, const double nu[3],
                                  double t, double* out);
QW_API qw_status qw_walk_ldp(const qw_walk* w, const double nu[3], double x,
                             double* empirical_rate, double* limit_rate);
QW_API qw_status qw_walk_word_expectation(const qw_walk* w,
                                          const qw_letter* letters,
                                          size_t count, double* re,
                                          double* im);
QW_API qw_status qw_walk_symmetrized(const qw_walk* w, const qw_letter* letters,
                                     size_t count, double* out);

/* Limit objects for a stationary Bloch vector v. */
QW_API qw_status qw_lambda_limit(const double nu[3], const double v[3],
                                 double t, double* out);
/* +inf outside [-|nu|, |nu|]. */
QW_API qw_status qw_rate_function(const double nu[3], const double v[3],
                                  double x, double* out);
QW_API qw_status qw_legendre_numeric(const double nu[3], const double v[3],
                                     double x, double* out);
QW_API qw_status qw_gaussian_word_moment(const double covariance[9],
                                         const qw_letter* letters,
                                         size_t count, double* out);
/* Limit of qw_walk_word_expectation for stationary vector v. */
QW_API qw_status qw_quasi_free_word_moment(const double v[3],
                                           const qw_letter* letters,
                                           size_t count, double* re,
                                           double* im);
/* components in 1..3 */
QW_API qw_status qw_wick_moment(const double covariance[9],
                                const int* components, const double* times,
                                size_t count, double* out);
QW_API qw_status qw_commutator_check(const double v[3], size_t n, double t,
                                     qw_commutator_report* out);

#ifdef __cplusplus
}
#endif

#endif
