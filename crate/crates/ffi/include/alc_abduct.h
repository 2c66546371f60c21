#ifndef ALC_ABDUCT_H
#define ALC_ABDUCT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AaMode {
  AA_MODE_APPROX = 0,
  AA_MODE_FULL = 1,
  AA_MODE_FULL_NO_APPROX = 2,
} AaMode;

/**
 * Result codes. Every fallible function returns one of these.
 */
typedef enum AaStatus {
  AA_STATUS_OK = 0,
  AA_STATUS_NULL_ARGUMENT = 1,
  AA_STATUS_INVALID_UTF8 = 2,
  AA_STATUS_PARSE = 3,
  AA_STATUS_NO_ONTOLOGY = 4,
  AA_STATUS_INCONSISTENT_ONTOLOGY = 5,
  AA_STATUS_OBSERVATION_INCONSISTENT = 6,
  AA_STATUS_OBSERVATION_ENTAILED = 7,
  AA_STATUS_NO_HYPOTHESIS = 8,
  AA_STATUS_INVALID_SIGNATURE = 9,
  AA_STATUS_TIMEOUT = 10,
  AA_STATUS_UNSUPPORTED = 11,
  AA_STATUS_INVALID_MODE = 12,
  AA_STATUS_INTERNAL = 13,
} AaStatus;

/**
 * Opaque session handle.
 */
typedef struct AaSession AaSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates an empty session. Free it with `aa_session_free`.
 */
struct AaSession *aa_session_new(void);

/**
 * Frees a session. Null is ignored.
 *
 * # Safety
 * `s` must come from `aa_session_new` and not have been freed.
 */
void aa_session_free(struct AaSession *s);

/**
 * Parses `text` as the session ontology, replacing any previous one.
 *
 * # Safety
 * `s` must be a live session and `text` a NUL-terminated string.
 */
enum AaStatus aa_session_load_ontology(struct AaSession *s, const char *text);

/**
 * Abduces a hypothesis for `observation` (one assertion per line),
 * forgetting the comma-separated concept names in `forget`. `mode` is an
 * `AaMode` value; a timeout of 0 uses the default budget. On success the
 * hypothesis and a JSON report are available from the session.
 *
 * # Safety
 * `s` must be a live session; the strings must be NUL-terminated.
 */
enum AaStatus aa_session_abduce(struct AaSession *s,
                                const char *observation,
                                const char *forget,
                                uint32_t mode,
                                uint64_t timeout_ms);

/**
 * Decides whether the session ontology entails `axiom`; writes 1 or 0 to
 * `out`.
 *
 * # Safety
 * `s` must be a live session, `axiom` NUL-terminated and `out` writable.
 */
enum AaStatus aa_session_entails(struct AaSession *s, const char *axiom, int32_t *out);

/**
 * The hypothesis of the last successful `aa_session_abduce`, or null.
 *
 * # Safety
 * `s` must be a live session or null.
 */
const char *aa_session_hypothesis(const struct AaSession *s);

/**
 * The JSON report of the last `aa_session_abduce` that ran the pipeline, or null.
 *
 * # Safety
 * `s` must be a live session or null.
 */
const char *aa_session_report_json(const struct AaSession *s);

/**
 * The message for the last failed call, or null.
 *
 * # Safety
 * `s` must be a live session or null.
 */
const char *aa_session_last_error(const struct AaSession *s);

/**
 * A static description of `status`.
 */
const char *aa_status_str(enum AaStatus status);

/**
 * Library version, static.
 */
const char *aa_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ALC_ABDUCT_H */
