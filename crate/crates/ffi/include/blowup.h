#ifndef BLOWUP_H
#define BLOWUP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum BlowupStatus {
  BLOWUP_STATUS_OK = 0,
  BLOWUP_STATUS_NULL_POINTER = 1,
  BLOWUP_STATUS_INVALID_UTF8 = 2,
  BLOWUP_STATUS_PARSE = 3,
  BLOWUP_STATUS_PRECONDITION = 4,
  BLOWUP_STATUS_CONTEXT = 5,
  BLOWUP_STATUS_ORACLE = 6,
  BLOWUP_STATUS_INTERNAL = 7,
} BlowupStatus;

/**
 * Opaque divisor class.
 */
typedef struct BlowupClass BlowupClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses `{"n":..,"r":..,"d":..,"m":[..]}` into a new handle.
 *
 * # Safety
 * `json` must be a valid nul-terminated string and `out` a valid pointer.
 */
enum BlowupStatus blowup_class_from_json(const char *json, struct BlowupClass **out);

/**
 * # Safety
 * `class` must come from this library and not be used afterwards. Null is ignored.
 */
void blowup_class_free(struct BlowupClass *class_);

/**
 * # Safety
 * `class` must be a live handle, `out` a valid pointer.
 */
enum BlowupStatus blowup_class_to_json(const struct BlowupClass *class_, char **out);

/**
 * Binomial virtual dimension.
 *
 * # Safety
 * `class` must be a live handle, `out` a valid pointer.
 */
enum BlowupStatus blowup_vdim(const struct BlowupClass *class_, int64_t *out);

/**
 * Intersection number on a surface, as `"p/q"` or an integer string.
 *
 * # Safety
 * Both handles must be live, `out` a valid pointer.
 */
enum BlowupStatus blowup_pair(const struct BlowupClass *a, const struct BlowupClass *b, char **out);

/**
 * Weyl reduction. `status_out` receives 0 (standard), 1 (negative tail) or
 * 2 (degree went negative); `out` a new handle to the reduced class.
 *
 * # Safety
 * `class` must be a live handle, the out pointers valid.
 */
enum BlowupStatus blowup_reduce(const struct BlowupClass *class_,
                                struct BlowupClass **out,
                                int32_t *status_out);

/**
 * # Safety
 * `class` must be a live handle, `out` a valid pointer.
 */
enum BlowupStatus blowup_is_minus_one(const struct BlowupClass *class_, bool *out);

/**
 * Nefness: exact for `r < 2^n`, otherwise the surface screen up to `bound`.
 *
 * # Safety
 * `class` must be a live handle, `out` a valid pointer.
 */
enum BlowupStatus blowup_nef(const struct BlowupClass *class_, int64_t bound, bool *out);

/**
 * Asymptotic speciality verdict as JSON.
 *
 * # Safety
 * `class` must be a live handle, `out` a valid pointer.
 */
enum BlowupStatus blowup_classify(const struct BlowupClass *class_,
                                  uint64_t prime,
                                  int64_t bound,
                                  char **out);

/**
 * `h⁰` over `F_prime` at random points, minimized over `seeds[0..nseeds]`.
 *
 * # Safety
 * `class` must be a live handle, `seeds` must point to `nseeds` values, `out` valid.
 */
enum BlowupStatus blowup_h0(const struct BlowupClass *class_,
                            uint64_t prime,
                            const uint64_t *seeds,
                            uintptr_t nseeds,
                            int64_t *out);

/**
 * Message for the most recent failure on this thread; empty after a success.
 * Valid until the next call into this library on the same thread.
 */
const char *blowup_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards. Null is ignored.
 */
void blowup_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BLOWUP_H */
