/* C interface to the descent-algebra engine. */

#ifndef DESCENT_H
#define DESCENT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Output encoding for product strings.
 */
typedef enum DescentFormat {
  DescentFormat_Text = 0,
  DescentFormat_Json = 1,
} DescentFormat;

/**
 * Result codes of every API call.
 */
typedef enum DescentStatus {
  DescentStatus_Ok = 0,
  /**
   * A required pointer argument was NULL.
   */
  DescentStatus_NullArgument = 1,
  /**
   * An input string was not valid UTF-8.
   */
  DescentStatus_InvalidUtf8 = 2,
  /**
   * An operand failed to parse.
   */
  DescentStatus_ParseError = 3,
  /**
   * A parsed operand violates the basis-index invariants.
   */
  DescentStatus_InvalidIndex = 4,
  /**
   * Rank out of range, mismatched, or above the configured cap.
   */
  DescentStatus_RankError = 5,
  /**
   * Exact integer arithmetic overflowed.
   */
  DescentStatus_Overflow = 6,
  /**
   * A verification suite ran to completion and found counterexamples.
   */
  DescentStatus_VerificationFailed = 7,
  /**
   * Broken internal invariant or panic; a bug, not a usage error.
   */
  DescentStatus_InternalError = 8,
} DescentStatus;

/**
 * Opaque handle over a fully built group table.
 */
typedef struct DescentTable DescentTable;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static string; do not free.
 */
const char *descent_version(void);

/**
 * Message for the most recent failure on this thread, or NULL. Valid until
 * the next API call on the same thread; do not free.
 */
const char *descent_last_error(void);

/**
 * Releases a string allocated by this library.
 *
 * # Safety
 *
 * `s` must be a pointer previously returned through an out-parameter of
 * this library, or NULL.
 */
void descent_string_free(char *s);

/**
 * Multiplies two basis elements by the template rule and writes the
 * product in the requested format.
 *
 * # Safety
 *
 * `p` and `q` must be NUL-terminated strings; `out` must be a valid
 * pointer.
 */
enum DescentStatus descent_multiply(char algebra,
                                    uint32_t n,
                                    const char *p,
                                    const char *q,
                                    enum DescentFormat format,
                                    char **out);

/**
 * Writes the admissible templates of a product as JSON.
 *
 * # Safety
 *
 * As for [`descent_multiply`].
 */
enum DescentStatus descent_templates(char algebra,
                                     uint32_t n,
                                     const char *p,
                                     const char *q,
                                     char **out);

/**
 * Writes the generator subset of a type-D basis index and its complement
 * as JSON.
 *
 * # Safety
 *
 * As for [`descent_multiply`].
 */
enum DescentStatus descent_bijection(uint32_t n, const char *index, char **out);

/**
 * Builds a group table handle. `max_rank` of 0 keeps the default cap.
 *
 * # Safety
 *
 * `out` must be a valid pointer. Free the handle with
 * [`descent_table_free`].
 */
enum DescentStatus descent_table_new(char algebra,
                                     uint32_t n,
                                     uint32_t max_rank,
                                     struct DescentTable **out);

/**
 * Releases a table handle.
 *
 * # Safety
 *
 * `table` must come from [`descent_table_new`], or be NULL.
 */
void descent_table_free(struct DescentTable *table);

/**
 * Number of group elements behind the handle; 0 for NULL.
 *
 * # Safety
 *
 * `table` must come from [`descent_table_new`], or be NULL.
 */
uint64_t descent_table_order(const struct DescentTable *table);

/**
 * Multiplies two basis elements by Solomon's structure-constant count on
 * the group behind the handle, bypassing the template rule.
 *
 * # Safety
 *
 * `table` must come from [`descent_table_new`]; strings and `out` as for
 * [`descent_multiply`].
 */
enum DescentStatus descent_oracle_multiply(const struct DescentTable *table,
                                           const char *p,
                                           const char *q,
                                           enum DescentFormat format,
                                           char **out);

/**
 * Runs a verification suite over an inclusive rank range and writes the
 * JSON reports. Returns `VerificationFailed` (with the reports still
 * written) when any check fails.
 *
 * # Safety
 *
 * `suite` must be a NUL-terminated string; `out` as for
 * [`descent_multiply`].
 */
enum DescentStatus descent_verify(const char *suite,
                                  char algebra,
                                  uint32_t n_lo,
                                  uint32_t n_hi,
                                  char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DESCENT_H */
