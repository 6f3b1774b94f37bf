#ifndef MOURRE_C_H
#define MOURRE_C_H

#include <stddef.h>

#if defined(_WIN32)
#define MRL_API __declspec(dllexport)
#else
#define MRL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    MRL_OK = 0,
    MRL_ZERO_COUPLING = 1,
    MRL_NOT_GAPLESS,
    MRL_DOMAIN,
    MRL_CONICAL_POINT,
    MRL_WINDOW_TOO_SMALL,
    MRL_WINDOW_MISMATCH,
    MRL_MARGIN_TOO_LARGE,
    MRL_NOT_HERMITIAN,
    MRL_EMPTY_PROJECTOR,
    MRL_BAD_ANNULUS,
    MRL_NOT_ALTERNATING,
    MRL_ALL_ZERO,
    MRL_NO_EDGE_STATE,
    MRL_SINGULAR,
    MRL_NO_CONVERGENCE,
    MRL_INVALID_ARGUMENT,
    MRL_INTERNAL = 99
} mrl_status;

typedef struct mrl_model mrl_model;
typedef struct mrl_sequence mrl_sequence;
typedef struct mrl_operator mrl_operator;

/* message of the last failing call on this thread; never NULL */
MRL_API const char* mrl_last_error(void);
MRL_API const char* mrl_status_name(mrl_status s);
/* strings returned through char** out-parameters are released with this */
MRL_API void mrl_string_free(char* s);

/* ---- model ---- */
MRL_API mrl_status mrl_model_create(double alpha, double a_re, double a_im, double b_re, double b_im,
                                    mrl_model** out);
MRL_API void mrl_model_destroy(mrl_model* m);
MRL_API mrl_status mrl_model_gapless(const mrl_model* m, int* out);
/* out = {I-.lo, I-.hi, I+.lo, I+.hi} */
MRL_API mrl_status mrl_bands(const mrl_model* m, double out[4], int* has_gap);
/* writes up to cap points; count receives the full size */
MRL_API mrl_status mrl_kappa(const mrl_model* m, int k, double* points, size_t cap, size_t* count);
MRL_API mrl_status mrl_g(const mrl_model* m, int k, double t, double* out);
MRL_API mrl_status mrl_mourre_fourier(const mrl_model* m, int k, int npoints, double* deviation);
MRL_API mrl_status mrl_inf_g(const mrl_model* m, int k, double lo, double hi, double* out);

/* ---- sequences ---- */
/* families: kopylova, power (param = s), inverse_linear, oscillating (param = s),
   s_rate / mk_rate (param = r, l = param2, k = param3 for mk_rate), constant (param = c) */
MRL_API mrl_status mrl_sequence_named(const char* family, double param, double param2, double param3,
                                      mrl_sequence** out);
/* entries: 8 reals per row (w11 re im, w12 re im, w21 re im, w22 re im); zero below the first index,
   unknown beyond the last */
MRL_API mrl_status mrl_sequence_from_table(const long* n, const double* entries, size_t rows, mrl_sequence** out);
/* potential of the block-alternating counterexample: dyadic tents, a_n = 1/(n+1) ("harmonic")
   or (n+1)^(-power) ("power"), blocks up to n_max */
MRL_API mrl_status mrl_sequence_counterexample(const char* a_family, double power, int n_max, mrl_sequence** out);
MRL_API void mrl_sequence_destroy(mrl_sequence* s);
MRL_API mrl_status mrl_sequence_eval(const mrl_sequence* s, long n, double out[8]);
/* scales every entry by c */
MRL_API mrl_status mrl_sequence_scale(const mrl_sequence* s, double c, mrl_sequence** out);

/* ---- classification (JSON reports) ---- */
/* cls: "S", "M", "Q", "l1", "rho"; k and order as for the classes; beta/gamma annulus; component for l1 */
MRL_API mrl_status mrl_classify(const mrl_sequence* s, const char* cls, int k, int order, double beta, double gamma,
                                int row, int col, long horizon, char** json);
MRL_API mrl_status mrl_counterexample_report(const char* a_family, double power, int n_max, int p_max, long horizon,
                                             long emit_b, char** json);
MRL_API mrl_status mrl_appendix_sanity(const mrl_sequence* s, double beta, double gamma, long horizon, char** json);

/* ---- lattice operators ---- */
/* H0 (+ diagonal potential v0 when non-NULL) on the bilateral [-N, N] or unilateral [0, N] window */
MRL_API mrl_status mrl_operator_create(const mrl_model* m, int unilateral, long N, const mrl_sequence* v0,
                                       mrl_operator** out);
MRL_API void mrl_operator_destroy(mrl_operator* op);
MRL_API mrl_status mrl_operator_dim(const mrl_operator* op, size_t* dim, size_t* half_bandwidth);
MRL_API mrl_status mrl_operator_eigvals(const mrl_operator* op, double* values, size_t cap, size_t* count);
/* text dump: "dim bandwidth" then "row col re im" per stored entry */
MRL_API mrl_status mrl_operator_dump(const mrl_operator* op, char** text);

MRL_API mrl_status mrl_check_a0_identity(const mrl_model* m, long N, long margin, double* deviation);
MRL_API mrl_status mrl_check_ak_commutator(const mrl_model* m, int k, const mrl_sequence* w, long N, long margin,
                                           double* deviation);
MRL_API mrl_status mrl_check_a0_commutator(const mrl_model* m, const mrl_sequence* w, long N, long margin,
                                           double* deviation);
MRL_API mrl_status mrl_ssh_unfold_residual(const mrl_model* m, long N, double* residual);

typedef struct {
    double min_eig;
    double max_eig;
    size_t rank;
    double inf_g;
} mrl_projected;

/* E_L [iA_k, H] E_L on the bilateral window, L = [lo, hi]; k = 0 uses the gapless conjugate operator */
MRL_API mrl_status mrl_truncated_mourre(const mrl_model* m, int k, double lo, double hi, long N,
                                        const mrl_sequence* v0, mrl_projected* out);

/* ---- spectral probe ---- */
MRL_API mrl_status mrl_stable_eigs(const mrl_model* m, int unilateral, const long* N_list, size_t nN,
                                   const mrl_sequence* v0, double lo, double hi, int threads, char** json);
MRL_API mrl_status mrl_edge_state(const mrl_model* m, long N, double* eigenvalue, double* decay_ratio,
                                  double* drift);

typedef struct {
    double x, epsilon, s;
    long N;
    double norm;
    int iters;
    int converged;
} mrl_lap_row;

/* rows must hold nx * ne entries; x-major order */
MRL_API mrl_status mrl_lap_scan(const mrl_operator* op, double s, const double* xs, size_t nx, const double* eps,
                                size_t ne, int threads, double tol, int cap, mrl_lap_row* rows);
MRL_API mrl_status mrl_resolvent_norm(const mrl_operator* op, double s, double x, double eps, double tol, int cap,
                                      double* norm, int* iters);

typedef struct {
    long below, lower_band, gap, upper_band, above;
} mrl_band_count_t;

MRL_API mrl_status mrl_band_counts(const mrl_model* m, const mrl_operator* op, mrl_band_count_t* out);
MRL_API mrl_status mrl_accumulation_scan(const mrl_model* m, int k, const mrl_sequence* v0, const double* radii,
                                         size_t nr, const long* N_list, size_t nN, int threads, char** json);

#ifdef __cplusplus
}
#endif

#endif
