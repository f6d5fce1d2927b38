#ifndef GRABIN_H
#define GRABIN_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum GrabinStatus {
  GRABIN_STATUS_OK = 0,
  GRABIN_STATUS_NULL_POINTER = 1,
  GRABIN_STATUS_INVALID_UTF8 = 2,
  GRABIN_STATUS_INVALID_SPEC = 3,
  GRABIN_STATUS_CAPACITY_EXCEEDED = 4,
  /**
   * The requested artefact does not exist for this outcome, e.g. the
   * machine of an unrealizable spec.
   */
  GRABIN_STATUS_NOT_AVAILABLE = 5,
  GRABIN_STATUS_INTERNAL = 6,
  GRABIN_STATUS_PANIC = 7,
} GrabinStatus;

/**
 * The result of synthesis: a machine or a counterstrategy.
 */
typedef struct GrabinOutcome GrabinOutcome;

/**
 * A parsed and normalised specification.
 */
typedef struct GrabinSpec GrabinSpec;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses spec JSON. `base_dir` resolves `hoa_file` entries and may be null
 * for the current directory. On success `*out` holds a new handle.
 *
 * # Safety
 * `json` and a non-null `base_dir` must be NUL-terminated strings; `out`
 * must be writable.
 */
enum GrabinStatus grabin_spec_parse(const char *json,
                                    const char *base_dir,
                                    struct GrabinSpec **out);

/**
 * # Safety
 * `spec` must be null or a handle from [`grabin_spec_parse`] not yet freed.
 */
void grabin_spec_free(struct GrabinSpec *spec);

/**
 * Decides realizability and extracts a machine or counterstrategy.
 * A `state_limit` of 0 selects the default product size limit.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum GrabinStatus grabin_synthesize(const struct GrabinSpec *spec,
                                    uint64_t state_limit,
                                    struct GrabinOutcome **out);

/**
 * # Safety
 * `outcome` must be null or a handle from [`grabin_synthesize`] not yet
 * freed.
 */
void grabin_outcome_free(struct GrabinOutcome *outcome);

/**
 * # Safety
 * `outcome` must be a live handle; `out` must be writable.
 */
enum GrabinStatus grabin_outcome_is_realizable(const struct GrabinOutcome *outcome, bool *out);

/**
 * The Mealy machine as JSON. Fails with `NotAvailable` when unrealizable.
 *
 * # Safety
 * `outcome` must be a live handle; `out` must be writable.
 */
enum GrabinStatus grabin_outcome_machine_json(const struct GrabinOutcome *outcome, char **out);

/**
 * The environment counterstrategy as JSON. Fails with `NotAvailable` when
 * realizable.
 *
 * # Safety
 * `outcome` must be a live handle; `out` must be writable.
 */
enum GrabinStatus grabin_outcome_counterstrategy_json(const struct GrabinOutcome *outcome,
                                                      char **out);

/**
 * The specification's parity automaton in HOA format.
 *
 * # Safety
 * `spec` must be a live handle; `out` must be writable.
 */
enum GrabinStatus grabin_product_hoa(const struct GrabinSpec *spec,
                                     uint64_t state_limit,
                                     char **out);

/**
 * # Safety
 * `s` must be null or a string returned by this library not yet freed.
 */
void grabin_string_free(char *s);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into the library on the same thread.
 */
const char *grabin_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GRABIN_H */
