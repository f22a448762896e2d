#ifndef EQKH_H
#define EQKH_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. The nonzero values below 5 match the command line's exit
 * codes.
 */
typedef enum EqkhStatus {
  EQKH_STATUS_OK = 0,
  EQKH_STATUS_FAILED = 1,
  EQKH_STATUS_PARSE = 2,
  EQKH_STATUS_SCOPE = 3,
  EQKH_STATUS_VERIFICATION = 4,
  EQKH_STATUS_NULL_ARGUMENT = 5,
  EQKH_STATUS_INVALID_UTF8 = 6,
  EQKH_STATUS_PANIC = 7,
} EqkhStatus;

/**
 * A parsed link diagram.
 */
typedef struct EqkhDiagram EqkhDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last error on this thread, or null. Valid until the next
 * call into the library from the same thread.
 */
const char *eqkh_last_error(void);

/**
 * Parses a PD code such as `PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]`.
 *
 * # Safety
 * `pd` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EqkhStatus eqkh_diagram_parse(const char *pd, struct EqkhDiagram **out);

/**
 * Releases a diagram; null is ignored.
 *
 * # Safety
 * `d` must come from this library and not be used afterwards.
 */
void eqkh_diagram_free(struct EqkhDiagram *d);

/**
 * The mirror image as a new diagram.
 *
 * # Safety
 * `d` must be a live diagram and `out` a valid pointer.
 */
enum EqkhStatus eqkh_diagram_mirror(const struct EqkhDiagram *d, struct EqkhDiagram **out);

/**
 * Number of crossings, or 0 for null.
 *
 * # Safety
 * `d` must be null or a live diagram.
 */
size_t eqkh_diagram_crossings(const struct EqkhDiagram *d);

/**
 * Number of link components, or 0 for null.
 *
 * # Safety
 * `d` must be null or a live diagram.
 */
size_t eqkh_diagram_components(const struct EqkhDiagram *d);

/**
 * Writhe, or 0 for null.
 *
 * # Safety
 * `d` must be null or a live diagram.
 */
int32_t eqkh_diagram_writhe(const struct EqkhDiagram *d);

/**
 * Homology as the JSON object of the `homology` command (`ring`, `theory`,
 * `reduced`, `summands`). `theory` and `field` take the command line's
 * spellings, e.g. `"u1"` and `"f2"`.
 *
 * # Safety
 * `d` must be a live diagram, `theory` and `field` NUL-terminated strings,
 * and `out_json` a valid pointer; free the result with `eqkh_string_free`.
 */
enum EqkhStatus eqkh_homology_json(const struct EqkhDiagram *d,
                                   const char *theory,
                                   const char *field,
                                   bool reduced,
                                   char **out_json);

/**
 * The s-invariant of a knot over a field.
 *
 * # Safety
 * `d` must be a live diagram, `field` a NUL-terminated string and `out_s` a
 * valid pointer.
 */
enum EqkhStatus eqkh_s_invariant(const struct EqkhDiagram *d, const char *field, int32_t *out_s);

/**
 * The full s-invariant report as JSON, as in the `s` command.
 *
 * # Safety
 * As for [`eqkh_s_invariant`]; free the result with `eqkh_string_free`.
 */
enum EqkhStatus eqkh_s_report_json(const struct EqkhDiagram *d, const char *field, char **out_json);

/**
 * Releases a string returned by the library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void eqkh_string_free(char *s);

/**
 * Library version, a static string.
 */
const char *eqkh_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQKH_H */
