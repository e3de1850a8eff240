#ifndef LORENTZ3_H
#define LORENTZ3_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum L3Status {
  L3_STATUS_OK = 0,
  L3_STATUS_NULL_POINTER = 1,
  L3_STATUS_INVALID_UTF8 = 2,
  L3_STATUS_PARSE = 3,
  L3_STATUS_INVALID_ARGUMENT = 4,
  L3_STATUS_NOT_A_DERIVATION = 5,
  L3_STATUS_CENTRAL_ISOTROPY = 6,
  L3_STATUS_UNIMODULAR_INPUT = 7,
  L3_STATUS_NO_INVARIANT_METRIC = 8,
  L3_STATUS_DOMAIN_ERROR = 9,
  L3_STATUS_DEGENERATE_PLANE = 10,
  L3_STATUS_STEP_UNDERFLOW = 11,
  L3_STATUS_IO = 12,
  L3_STATUS_PANIC = 13,
} L3Status;

/**
 * How a geodesic integration ended.
 */
typedef enum L3Termination {
  L3_TERMINATION_COMPLETED_SPAN = 0,
  L3_TERMINATION_HIT_DOMAIN_BOUNDARY = 1,
  L3_TERMINATION_STEP_UNDERFLOW = 2,
} L3Termination;

/**
 * A coordinate chart of a plane wave.
 */
typedef struct L3Chart L3Chart;

/**
 * A derivation of the Heisenberg algebra.
 */
typedef struct L3Derivation L3Derivation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on this thread.
 */
const char *l3_last_error(void);

/**
 * Library version as a static string.
 */
const char *l3_version(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void l3_string_free(char *s);

/**
 * Parses a row-major 3x3 JSON array in the basis (Z, X, Y).
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum L3Status l3_derivation_from_json(const char *json, struct L3Derivation **out);

/**
 * The normal form `[[1,0,0],[0,0,1],[0,b,1]]` for a rational `b` such as `"-1/4"`.
 *
 * # Safety
 * `b` must be a nul-terminated string; `out` must be writable.
 */
enum L3Status l3_derivation_canonical(const char *b, struct L3Derivation **out);

/**
 * `diag(1, 1 - alpha, alpha)` for a rational `alpha`.
 *
 * # Safety
 * `alpha` must be a nul-terminated string; `out` must be writable.
 */
enum L3Status l3_derivation_rosen(const char *alpha, struct L3Derivation **out);

/**
 * # Safety
 * `d` must come from a derivation constructor and not have been freed.
 */
void l3_derivation_free(struct L3Derivation *d);

/**
 * Invariant `b` as a rational string.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum L3Status l3_invariant_b(const struct L3Derivation *d, char **out);

/**
 * Class tag such as `"NonUnimodularHyperbolic"`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum L3Status l3_classify(const struct L3Derivation *d, char **out);

/**
 * Full space report as JSON.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum L3Status l3_space_report_json(const struct L3Derivation *d, char **out);

/**
 * # Safety
 * `a` and `b` must be live handles; `out` must be writable.
 */
enum L3Status l3_groups_isomorphic(const struct L3Derivation *a,
                                   const struct L3Derivation *b,
                                   bool *out);

/**
 * Brinkmann chart `2dudv + (b/u²)x²du² + dx²` on `u > 0`.
 *
 * # Safety
 * `out` must be writable.
 */
enum L3Status l3_chart_power_law(double b, struct L3Chart **out);

/**
 * Brinkmann chart `2dudv + h x²du² + dx²`.
 *
 * # Safety
 * `out` must be writable.
 */
enum L3Status l3_chart_constant(double h, struct L3Chart **out);

/**
 * Rosen chart `2dudv + u^(2 alpha) dx²` on `u > 0`.
 *
 * # Safety
 * `out` must be writable.
 */
enum L3Status l3_chart_rosen_power(double alpha, struct L3Chart **out);

/**
 * Brinkmann chart of the space classified from `d`.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum L3Status l3_chart_for(const struct L3Derivation *d, struct L3Chart **out);

/**
 * # Safety
 * `c` must come from a chart constructor and not have been freed.
 */
void l3_chart_free(struct L3Chart *c);

/**
 * Metric at `point[3]` (coordinates u, v, x) into `out[9]`, row-major.
 *
 * # Safety
 * `c` must be a live handle; `point` must hold 3 doubles and `out` 9.
 */
enum L3Status l3_chart_metric(const struct L3Chart *c, const double *point, double *out);

/**
 * `Γ^k_ij` into `out[27]` at index `9k + 3i + j`.
 *
 * # Safety
 * `c` must be a live handle; `point` must hold 3 doubles and `out` 27.
 */
enum L3Status l3_chart_christoffels(const struct L3Chart *c, const double *point, double *out);

/**
 * `R_ijkl = g(R(∂i,∂j)∂k, ∂l)` into `out[81]` at index `27i + 9j + 3k + l`.
 *
 * # Safety
 * `c` must be a live handle; `point` must hold 3 doubles and `out` 81.
 */
enum L3Status l3_chart_riemann(const struct L3Chart *c, const double *point, double *out);

/**
 * Sectional curvature of the plane spanned by `e1[3]`, `e2[3]`.
 *
 * # Safety
 * `c` must be a live handle; array arguments must hold 3 doubles.
 */
enum L3Status l3_sectional_curvature(const struct L3Chart *c,
                                     const double *point,
                                     const double *e1,
                                     const double *e2,
                                     double *out);

/**
 * Integrates the geodesic with initial `state[6] = (u, v, x, u', v', x')`
 * over the affine `span` with default tolerances. Writes the final state,
 * the affine parameter reached and how the run ended.
 *
 * # Safety
 * `c` must be a live handle; `state` and `final_state` must hold 6
 * doubles; the scalar outputs must be writable.
 */
enum L3Status l3_integrate_geodesic(const struct L3Chart *c,
                                    const double *state,
                                    double span,
                                    double *final_state,
                                    double *affine_reached,
                                    enum L3Termination *termination);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LORENTZ3_H */
