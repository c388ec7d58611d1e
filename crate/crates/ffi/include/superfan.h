/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#ifndef SUPERFAN_H
#define SUPERFAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum SfStatus {
  SF_STATUS_OK = 0,
  SF_STATUS_NULL_POINTER = 1,
  SF_STATUS_INVALID_UTF8 = 2,
  SF_STATUS_PARSE = 3,
  SF_STATUS_INVALID = 4,
  SF_STATUS_NOT_APPLICABLE = 5,
  SF_STATUS_UNSUPPORTED = 6,
  SF_STATUS_OVERFLOW = 7,
  SF_STATUS_PANIC = 8,
} SfStatus;

/**
 * A decorated fan. Create with `sf_fan_parse`, release with `sf_fan_free`.
 */
typedef struct SfDecoratedFan SfDecoratedFan;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *sf_version(void);

/**
 * Message of the last failed call on this thread, or the empty string.
 * The pointer stays valid until the next call into the library on this thread.
 */
const char *sf_last_error(void);

/**
 * Parses fan file text and checks the fan axioms. Decorations of faces
 * follow from the maximal cones; their admissibility is checked by
 * `sf_fan_validate`.
 *
 * # Safety
 * `text` must be NUL-terminated and `out` writable.
 */
enum SfStatus sf_fan_parse(const char *text, struct SfDecoratedFan **out);

/**
 * Releases a fan. Null is ignored.
 *
 * # Safety
 * `fan` must come from `sf_fan_parse` and not be used afterwards.
 */
void sf_fan_free(struct SfDecoratedFan *fan);

/**
 * `SfStatus::Ok` if the decorations are c-admissible, else `SfStatus::Invalid`
 * with one violation per line in `sf_last_error`.
 *
 * # Safety
 * `fan` must be a live handle.
 */
enum SfStatus sf_fan_validate(const struct SfDecoratedFan *fan);

/**
 * # Safety
 * `fan` must be a live handle and `out` writable.
 */
enum SfStatus sf_fan_rank(const struct SfDecoratedFan *fan, size_t *out);

/**
 * # Safety
 * `fan` must be a live handle and `out` writable.
 */
enum SfStatus sf_fan_is_split(const struct SfDecoratedFan *fan, bool *out);

/**
 * # Safety
 * `fan` must be a live handle and `out` writable.
 */
enum SfStatus sf_fan_is_smooth(const struct SfDecoratedFan *fan, bool *out);

/**
 * Degree `d` of the fermionic sheaf `O(d)` of a complete rank-1 fan.
 *
 * # Safety
 * `fan` must be a live handle and `out` writable.
 */
enum SfStatus sf_fan_degree(const struct SfDecoratedFan *fan, int64_t *out);

/**
 * The `cspace:` report line.
 *
 * # Safety
 * `fan` must be a live handle and `out` writable; free the result with `sf_string_free`.
 */
enum SfStatus sf_fan_cspace(const struct SfDecoratedFan *fan, char **out);

/**
 * The `orbit` report line for the cone with id `cone`.
 *
 * # Safety
 * `fan` must be a live handle, `cone` NUL-terminated and `out` writable.
 */
enum SfStatus sf_fan_orbit(const struct SfDecoratedFan *fan, const char *cone, char **out);

/**
 * The fan in file format.
 *
 * # Safety
 * `fan` must be a live handle and `out` writable.
 */
enum SfStatus sf_fan_print(const struct SfDecoratedFan *fan, char **out);

/**
 * Binomials of the ideal of `Y_{A,B}` for monomial file text, one per line,
 * from relations with entries bounded by `bound`.
 *
 * # Safety
 * `text` must be NUL-terminated and `out` writable.
 */
enum SfStatus sf_ideal_binomials(const char *text, uint32_t bound, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void sf_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPERFAN_H */
