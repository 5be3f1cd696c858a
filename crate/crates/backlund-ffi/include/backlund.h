#ifndef BACKLUND_H
#define BACKLUND_H

/* Generated from the Rust sources by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which member of a pair to evaluate.
 */
typedef enum {
  BK_FIELD_ELECTRIC = 0,
  BK_FIELD_MAGNETIC,
} BkField;

/**
 * Outcome of an interface call. Anything but `Ok` leaves a message
 * readable through `bk_last_error_message`.
 */
typedef enum {
  BK_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  BK_STATUS_NULL_POINTER,
  /**
   * A scalar or vector argument is outside its admissible range.
   */
  BK_STATUS_INVALID_ARGUMENT,
  /**
   * The amplitude has a component along the propagation direction.
   */
  BK_STATUS_NOT_TRANSVERSE,
  /**
   * Stored wavenumber/attenuation values disagree with the medium.
   */
  BK_STATUS_DISPERSION_MISMATCH,
  /**
   * The requested grid cannot support the stencils.
   */
  BK_STATUS_GRID,
  BK_STATUS_INTERNAL,
} BkStatus;

/**
 * Opaque handle: a conjugate field pair plus the medium and frequency
 * it was built for.
 */
typedef struct BkPair BkPair;

/**
 * Solved attenuation triple for a medium at one frequency.
 */
typedef struct {
  double k;
  double s;
  double phi;
} BkDispersion;

/**
 * Max and RMS interior residual of each governing equation, from one
 * run of the finite-difference checks.
 */
typedef struct {
  double div_e_max;
  double div_e_rms;
  double div_b_max;
  double div_b_rms;
  double curl_e_max;
  double curl_e_rms;
  double curl_b_max;
  double curl_b_rms;
  double wave_e_max;
  double wave_e_rms;
  double wave_b_max;
  double wave_b_rms;
} BkResidualSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Number of bytes in the current thread's last error message, without
 * the trailing nul. Zero when the previous call succeeded.
 */
uintptr_t bk_last_error_length(void);

/**
 * Copies the last error message (nul-terminated, truncated to fit) into
 * `buffer` and returns the number of bytes written without the nul.
 * Returns 0 when there is no pending message or the buffer is unusable.
 */
uintptr_t bk_last_error_message(char *buffer, uintptr_t length);

/**
 * Solves the attenuation/wavenumber system for the medium at `omega`.
 */
BkStatus bk_dispersion_solve(double omega,
                             double epsilon,
                             double mu,
                             double sigma,
                             BkDispersion *out);

/**
 * Removes the component of `e0` along `khat`, writing the transverse
 * remainder to `out_re`/`out_im`.
 */
BkStatus bk_project_transverse(const double *e0_re,
                               const double *e0_im,
                               const double *khat,
                               double *out_re,
                               double *out_im);

/**
 * Builds a conjugate plane-wave pair in a lossless medium. `e0` must
 * be transverse to `khat` (see `bk_project_transverse`); `khat` is
 * normalized here. The handle must be released with `bk_pair_free`.
 */
BkStatus bk_pair_new_vacuum(const double *e0_re,
                            const double *e0_im,
                            const double *khat,
                            double omega,
                            double epsilon,
                            double mu,
                            BkPair **out);

/**
 * Builds a conjugate attenuated pair in a conducting medium, solving
 * the dispersion system internally. Conventions as for
 * `bk_pair_new_vacuum`.
 */
BkStatus bk_pair_new_conductor(const double *e0_re,
                               const double *e0_im,
                               const double *khat,
                               double omega,
                               double epsilon,
                               double mu,
                               double sigma,
                               BkPair **out);

/**
 * New handle with the magnetic member scaled by `factor`: a
 * deliberately broken pair for exercising the residual checks.
 */
BkStatus bk_pair_scale_b(const BkPair *pair, double factor, BkPair **out);

/**
 * Evaluates one member at a space-time point; writes three real and
 * three imaginary components.
 */
BkStatus bk_pair_field_at(const BkPair *pair,
                          BkField which,
                          double x,
                          double y,
                          double z,
                          double t,
                          double *out_re,
                          double *out_im);

/**
 * Runs the first-order and wave-equation finite-difference checks on a
 * cubical grid of `points`^3 x `time_points` nodes with uniform spacing
 * `h`, centered on (cx, cy, cz, ct). Needs `points >= 3` for the
 * first-order residuals and `>= 5` for the wave residuals.
 */
BkStatus bk_pair_residual_summary(const BkPair *pair,
                                  double cx,
                                  double cy,
                                  double cz,
                                  double ct,
                                  double h,
                                  uintptr_t points,
                                  uintptr_t time_points,
                                  BkResidualSummary *out);

/**
 * Frequency the pair was built for.
 */
BkStatus bk_pair_omega(const BkPair *pair, double *out);

/**
 * Releases a handle. Null is a no-op.
 */
void bk_pair_free(BkPair *pair);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BACKLUND_H */
