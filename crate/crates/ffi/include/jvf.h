#ifndef JVF_H
#define JVF_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum JvfStatus {
  JVF_STATUS_OK = 0,
  JVF_STATUS_NULL_POINTER = 1,
  /**
   * Bad signature, scale, shift, dimension or level count.
   */
  JVF_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The point has a zero `y`-component.
   */
  JVF_STATUS_ON_BOUNDARY = 3,
  /**
   * The level budget ran out before the requested tolerance.
   */
  JVF_STATUS_NOT_CONVERGED = 4,
  /**
   * A polynomial or fragment needed by the computation vanished.
   */
  JVF_STATUS_DEGENERATE = 5,
  JVF_STATUS_PANIC = 6,
} JvfStatus;

/**
 * Opaque coefficient lists, periodic or finite.
 */
typedef struct JvfParamSet JvfParamSet;

/**
 * Opaque signature space.
 */
typedef struct JvfSpace JvfSpace;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code; never null.
 */
const char *jvf_status_message(enum JvfStatus status);

/**
 * Creates a space from `dim` signs (each `+1` or `−1`) with the `y` axis at `y_index`.
 *
 * # Safety
 * `signs` is valid for `dim` reads; `out` is valid for one write.
 */
enum JvfStatus jvf_space_new(const int8_t *signs,
                             size_t dim,
                             size_t y_index,
                             struct JvfSpace **out);

/**
 * # Safety
 * `space` is null or came from [`jvf_space_new`] and is not used afterwards.
 */
void jvf_space_free(struct JvfSpace *space);

/**
 * Dimension of the space; 0 for a null handle.
 *
 * # Safety
 * `space` is null or a live handle.
 */
size_t jvf_space_dim(const struct JvfSpace *space);

/**
 * Period-`period` coefficients: `period × dim` shifts and `period` scales.
 *
 * # Safety
 * `shifts` is valid for `period * dim` reads, `scales` for `period`, `out` for one write.
 */
enum JvfStatus jvf_params_new_periodic(const double *shifts,
                                       const double *scales,
                                       size_t period,
                                       size_t dim,
                                       struct JvfParamSet **out);

/**
 * `levels` explicit levels: `levels × dim` shifts and `levels + 1` scales.
 *
 * # Safety
 * `shifts` is valid for `levels * dim` reads, `scales` for `levels + 1`, `out` for one write.
 */
enum JvfStatus jvf_params_new_finite(const double *shifts,
                                     const double *scales,
                                     size_t levels,
                                     size_t dim,
                                     struct JvfParamSet **out);

/**
 * # Safety
 * `params` is null or came from a `jvf_params_new_*` call and is not used afterwards.
 */
void jvf_params_free(struct JvfParamSet *params);

/**
 * Checks the shift dimensions and `y`-components against `space`.
 *
 * # Safety
 * Both handles are null or live.
 */
enum JvfStatus jvf_params_validate(const struct JvfSpace *space, const struct JvfParamSet *params);

/**
 * `R_N(Z, T)` with `N = levels`. A null `tail` means `T = 0`; a nonzero
 * `tail_infinite` means `T = ∞` and `tail` is ignored. An infinite result
 * fills `out` with `+inf` and sets `*out_infinite` when that pointer is
 * non-null.
 *
 * # Safety
 * `z` and `out` are valid for `dim` doubles, `tail` is null or valid for
 * `dim` reads, `out_infinite` is null or valid for one write.
 */
enum JvfStatus jvf_eval_truncated(const struct JvfSpace *space,
                                  const struct JvfParamSet *params,
                                  const double *z,
                                  size_t levels,
                                  const double *tail,
                                  bool tail_infinite,
                                  double *out,
                                  bool *out_infinite);

/**
 * `R_N(Z, 0)` at the smallest `N ≤ max_levels` whose guaranteed diameter
 * `2ρ_N` is at most `rel_tol·|R_N|`. `out_levels` and `out_bound` receive
 * `N` and `2ρ_N`; either may be null.
 *
 * # Safety
 * `z` and `out` are valid for `dim` doubles; the remaining out-pointers are null or valid for one write.
 */
enum JvfStatus jvf_eval_converged(const struct JvfSpace *space,
                                  const struct JvfParamSet *params,
                                  const double *z,
                                  double rel_tol,
                                  size_t max_levels,
                                  double *out,
                                  bool *out_infinite,
                                  size_t *out_levels,
                                  double *out_bound);

/**
 * A-priori radius `ρ_N(Z)` of the ball holding every continuation after `levels` levels.
 *
 * # Safety
 * `z` is valid for `dim` reads and `out_radius` for one write.
 */
enum JvfStatus jvf_error_radius(const struct JvfSpace *space,
                                const struct JvfParamSet *params,
                                const double *z,
                                size_t levels,
                                double *out_radius);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* JVF_H */
