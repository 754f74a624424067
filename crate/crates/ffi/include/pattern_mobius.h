#ifndef PATTERN_MOBIUS_H
#define PATTERN_MOBIUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PmClass {
  PM_CLASS_OPPOSING_ADJACENCIES = 0,
  PM_CLASS_OBVIOUSLY_ZERO = 1,
  PM_CLASS_NEW = 2,
  PM_CLASS_ZERO_NOT_CERTIFIED = 3,
  PM_CLASS_NON_ZERO = 4,
} PmClass;

typedef enum PmStatus {
  PM_STATUS_OK = 0,
  PM_STATUS_NULL_POINTER = 1,
  PM_STATUS_INVALID_UTF8 = 2,
  PM_STATUS_PARSE = 3,
  PM_STATUS_DOMAIN = 4,
  PM_STATUS_OVERFLOW = 5,
  PM_STATUS_IO = 6,
  PM_STATUS_CACHE_CORRUPT = 7,
  PM_STATUS_PANIC = 8,
} PmStatus;

/**
 * Opaque Möbius value cache.
 */
typedef struct PmCache PmCache;

/**
 * Opaque strongly-zero registry for the principal Möbius function.
 */
typedef struct PmRegistry PmRegistry;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Owned by the
 * library; valid until the next failing call on this thread.
 */
const char *pm_last_error(void);

/**
 * Releases a string returned through an out-pointer. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void pm_string_free(char *s);

/**
 * A new empty cache. Never NULL.
 */
struct PmCache *pm_cache_new(void);

/**
 * # Safety
 * `cache` must come from [`pm_cache_new`] or [`pm_cache_load`] and not
 * have been freed already. NULL is ignored.
 */
void pm_cache_free(struct PmCache *cache);

/**
 * Reads a cache file into a new cache.
 *
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum PmStatus pm_cache_load(const char *path, struct PmCache **out);

/**
 * Writes the cache atomically to `path`.
 *
 * # Safety
 * `cache` must be a live handle and `path` a NUL-terminated string.
 */
enum PmStatus pm_cache_save(const struct PmCache *cache, const char *path);

/**
 * `μ(sigma, pi)`.
 *
 * # Safety
 * `cache` must be a live handle, `sigma` and `pi` NUL-terminated strings,
 * `out` writable.
 */
enum PmStatus pm_mobius(const struct PmCache *cache,
                        const char *sigma,
                        const char *pi,
                        int64_t *out);

/**
 * `μ(1, pi)`.
 *
 * # Safety
 * As for [`pm_mobius`].
 */
enum PmStatus pm_principal_mobius(const struct PmCache *cache, const char *pi, int64_t *out);

/**
 * Builds the principal strongly-zero registry for lengths ≤ `max_n`.
 *
 * # Safety
 * `cache` must be a live handle; `out` writable.
 */
enum PmStatus pm_registry_build(const struct PmCache *cache, size_t max_n, struct PmRegistry **out);

/**
 * # Safety
 * `registry` must come from [`pm_registry_build`] and not have been freed
 * already. NULL is ignored.
 */
void pm_registry_free(struct PmRegistry *registry);

/**
 * Longest length covered by `registry`.
 *
 * # Safety
 * `registry` must be a live handle; `out` writable.
 */
enum PmStatus pm_registry_max_length(const struct PmRegistry *registry, size_t *out);

/**
 * Classifies `pi` (registry must cover lengths < `|pi|`). `out_text`
 * receives a one-line description with the witness; it may be NULL.
 *
 * # Safety
 * Handles must be live, `pi` NUL-terminated, `out_class` writable.
 */
enum PmStatus pm_classify(const struct PmRegistry *registry,
                          const struct PmCache *cache,
                          const char *pi,
                          enum PmClass *out_class,
                          char **out_text);

/**
 * Substitution decomposition, e.g. `"3624715 [ 1, 12, 1, 1, 21, 1, 1 ]"`.
 *
 * # Safety
 * `pi` must be NUL-terminated; `out` writable.
 */
enum PmStatus pm_decompose(const char *pi, char **out);

/**
 * Evaluates an inflation such as `"3624715[1,12,1,1,21,1,1]"`.
 *
 * # Safety
 * `spec` must be NUL-terminated; `out` writable.
 */
enum PmStatus pm_inflate(const char *spec, char **out);

/**
 * `(1/e²)·Σ_{k=2..terms} (2^k - 2)/k!`.
 *
 * # Safety
 * `out` must be writable.
 */
enum PmStatus pm_lower_bound(size_t terms, double *out);

/**
 * Number of permutations of length `n` with `μ(1, π) = 0`, and `n!`.
 * Builds the dense table up to `n`, which takes minutes from `n = 10`.
 *
 * # Safety
 * `cache` must be a live handle; both out-pointers writable.
 */
enum PmStatus pm_z_count(const struct PmCache *cache,
                         size_t n,
                         uint64_t *out_zero,
                         uint64_t *out_total);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PATTERN_MOBIUS_H */
