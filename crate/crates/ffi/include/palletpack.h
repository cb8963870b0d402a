#ifndef PALLETPACK_H
#define PALLETPACK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PpBoundMode {
  PP_BOUND_MODE_EXACT = 0,
  PP_BOUND_MODE_LP = 1,
} PpBoundMode;

/**
 * Result code of every fallible call.
 */
typedef enum PpStatus {
  PP_STATUS_OK = 0,
  PP_STATUS_NULL_POINTER = 1,
  PP_STATUS_INVALID_UTF8 = 2,
  PP_STATUS_PARSE_ERROR = 3,
  PP_STATUS_INVALID_INSTANCE = 4,
  PP_STATUS_INVALID_SOLUTION = 5,
  PP_STATUS_OUT_OF_RANGE = 6,
  PP_STATUS_INVALID_ARGUMENT = 7,
  PP_STATUS_PANIC = 8,
} PpStatus;

/**
 * Parsed instance plus the parameters the next solve will use.
 */
typedef struct PpInstance PpInstance;

typedef struct PpSolution PpSolution;

/**
 * One loaded unit. `unit` is its position in the instance's unit list.
 */
typedef struct PpPlacement {
  size_t unit;
  uint32_t x;
  uint32_t y;
  uint32_t z;
  uint32_t w;
  uint32_t d;
  uint32_t h;
  bool rotated;
} PpPlacement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failing call on this thread, or null. The pointer is
 * valid until the next failing call on the same thread.
 */
const char *pp_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *pp_version(void);

/**
 * Parses an instance document.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PpStatus pp_instance_from_json(const char *json, struct PpInstance **out);

/**
 * # Safety
 * `instance` must come from [`pp_instance_from_json`] and not be freed twice.
 */
void pp_instance_free(struct PpInstance *instance);

/**
 * Number of units in the instance, 0 for a null handle.
 *
 * # Safety
 * `instance` must be null or a live handle.
 */
size_t pp_instance_unit_count(const struct PpInstance *instance);

/**
 * # Safety
 * `instance` must be null or a live handle.
 */
enum PpStatus pp_instance_set_time_limit_ms(struct PpInstance *instance, uint64_t ms);

/**
 * # Safety
 * `instance` must be null or a live handle.
 */
enum PpStatus pp_instance_set_max_branches(struct PpInstance *instance, size_t branches);

/**
 * # Safety
 * `instance` must be null or a live handle.
 */
enum PpStatus pp_instance_set_bound_mode(struct PpInstance *instance, enum PpBoundMode mode);

/**
 * Runs the solver with the instance's current parameters.
 *
 * # Safety
 * `instance` must be a live handle and `out` a valid pointer.
 */
enum PpStatus pp_solve(const struct PpInstance *instance, struct PpSolution **out);

/**
 * # Safety
 * `solution` must come from [`pp_solve`] and not be freed twice.
 */
void pp_solution_free(struct PpSolution *solution);

/**
 * # Safety
 * `solution` must be null or a live handle.
 */
size_t pp_solution_placement_count(const struct PpSolution *solution);

/**
 * # Safety
 * `solution` must be null or a live handle.
 */
uint64_t pp_solution_placed_volume(const struct PpSolution *solution);

/**
 * # Safety
 * `solution` must be null or a live handle.
 */
double pp_solution_utilization(const struct PpSolution *solution);

/**
 * # Safety
 * `solution` must be null or a live handle.
 */
bool pp_solution_timed_out(const struct PpSolution *solution);

/**
 * Copies placement `index` (in loading order) into `out`.
 *
 * # Safety
 * `solution` must be a live handle and `out` a valid pointer.
 */
enum PpStatus pp_solution_placement(const struct PpSolution *solution,
                                    size_t index,
                                    struct PpPlacement *out);

/**
 * Solution document, as written by the command-line tool.
 *
 * # Safety
 * `solution` must be a live handle and `out` a valid pointer.
 */
enum PpStatus pp_solution_to_json(const struct PpSolution *solution, char **out);

/**
 * SVG drawing of the solution.
 *
 * # Safety
 * `solution` must be a live handle and `out` a valid pointer.
 */
enum PpStatus pp_solution_to_svg(const struct PpSolution *solution, char **out);

/**
 * Checks a solution document against `instance`. Returns
 * `PP_STATUS_INVALID_SOLUTION` with every problem in the error message when
 * a constraint does not hold.
 *
 * # Safety
 * `instance` must be a live handle and `solution_json` a NUL-terminated string.
 */
enum PpStatus pp_validate_json(const struct PpInstance *instance, const char *solution_json);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `text` must be null or a string from one of the `_to_*` functions.
 */
void pp_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PALLETPACK_H */
