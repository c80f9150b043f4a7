#ifndef RSCI_H
#define RSCI_H

/* Generated by cbindgen from crates/ffi/src. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result of every fallible call.
typedef enum RsciStatus {
  RSCI_STATUS_OK = 0,
  // A required pointer argument was NULL.
  RSCI_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  RSCI_STATUS_INVALID_UTF8 = 2,
  // A file could not be read.
  RSCI_STATUS_IO = 3,
  // Input did not match the expected schema.
  RSCI_STATUS_SCHEMA = 4,
  // The bundle has validation errors and cannot be exported.
  RSCI_STATUS_NOT_EXPORTABLE = 5,
  // A scalar argument was out of range (e.g. an impossible date).
  RSCI_STATUS_INVALID_ARGUMENT = 6,
  // Impact factor requested with zero publications.
  RSCI_STATUS_NO_PUBLICATIONS = 7,
  // The citation profile is empty.
  RSCI_STATUS_EMPTY_PROFILE = 8,
  // The h-index is zero, so the Hirsch coefficient is undefined.
  RSCI_STATUS_ZERO_H = 9,
  // An unexpected internal failure (including a caught panic).
  RSCI_STATUS_INTERNAL = 10,
} RsciStatus;

// A loaded issue: metadata plus attachment bytes.
typedef struct RsciBundle RsciBundle;

// Citation counts of one author or journal.
typedef struct RsciProfile RsciProfile;

// Bytes owned by the library. Release with [`rsci_buffer_free`].
typedef struct RsciBuffer {
  uint8_t *data;
  size_t len;
} RsciBuffer;

// Message describing the last failure on this thread, or NULL if none.
// The pointer stays valid until the next failing call on this thread.
const char *rsci_last_error(void);

// Releases a string returned by the library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void rsci_string_free(char *s);

// Releases a buffer returned by the library. A buffer with NULL `data` is
// ignored.
//
// # Safety
// `buf` must come from this library and not have been freed.
void rsci_buffer_free(struct RsciBuffer buf);

// True if `issn` is a well-formed ISSN (`NNNN-NNNC`) with a correct check digit.
//
// # Safety
// `issn` must be NULL or a NUL-terminated string.
bool rsci_check_issn(const char *issn);

// Loads an issue file and its attachments.
//
// # Safety
// `path` must be a NUL-terminated string and `out` a valid pointer.
enum RsciStatus rsci_bundle_load(const char *path, struct RsciBundle **out);

// Releases a bundle. NULL is ignored.
//
// # Safety
// `bundle` must come from [`rsci_bundle_load`] and not have been freed.
void rsci_bundle_free(struct RsciBundle *bundle);

// Validates the bundle. Any of the output pointers may be NULL.
//
// # Safety
// `bundle` must be a live handle; non-NULL outputs must be valid pointers.
enum RsciStatus rsci_bundle_validate(const struct RsciBundle *bundle,
                                     bool *exportable,
                                     size_t *errors,
                                     size_t *warnings);

// The full validation report as a JSON object with `violations` and
// `is_exportable`. Release `*out` with [`rsci_string_free`].
//
// # Safety
// `bundle` must be a live handle and `out` a valid pointer.
enum RsciStatus rsci_bundle_validation_json(const struct RsciBundle *bundle, char **out);

// Builds the upload ZIP with the given generation date. On success
// `*name` receives the archive file name and `*zip` its bytes.
//
// # Safety
// `bundle` must be a live handle; `name` and `zip` valid pointers.
enum RsciStatus rsci_bundle_package(const struct RsciBundle *bundle,
                                    int32_t year,
                                    uint32_t month,
                                    uint32_t day,
                                    char **name,
                                    struct RsciBuffer *zip);

// Creates a profile from `len` citation counts. `counts` may be NULL when
// `len` is 0.
//
// # Safety
// `counts` must point to `len` readable values; `out` must be valid.
enum RsciStatus rsci_profile_new(const uint32_t *counts, size_t len, struct RsciProfile **out);

// Releases a profile. NULL is ignored.
//
// # Safety
// `profile` must come from [`rsci_profile_new`] and not have been freed.
void rsci_profile_free(struct RsciProfile *profile);

// h-index; 0 for a NULL profile.
//
// # Safety
// `profile` must be NULL or a live handle.
size_t rsci_profile_h_index(const struct RsciProfile *profile);

// g-index, capped at the number of papers; 0 for a NULL profile.
//
// # Safety
// `profile` must be NULL or a live handle.
size_t rsci_profile_g_index(const struct RsciProfile *profile);

// Papers with at least ten citations; 0 for a NULL profile.
//
// # Safety
// `profile` must be NULL or a live handle.
size_t rsci_profile_i10_index(const struct RsciProfile *profile);

// Sum of all citation counts; 0 for a NULL profile.
//
// # Safety
// `profile` must be NULL or a live handle.
uint64_t rsci_profile_total_citations(const struct RsciProfile *profile);

// Hirsch coefficient `a = N_c,tot / h^2` as a reduced fraction.
// `within_range` (may be NULL) tells whether 3 <= a <= 5.
//
// # Safety
// `profile` must be a live handle; `numerator` and `denominator` valid.
enum RsciStatus rsci_profile_hirsch_a(const struct RsciProfile *profile,
                                      uint64_t *numerator,
                                      uint64_t *denominator,
                                      bool *within_range);

// Two-year impact factor `(c1 + c2) / (p1 + p2)` as a reduced fraction.
//
// # Safety
// `numerator` and `denominator` must be valid pointers.
enum RsciStatus rsci_impact_factor(uint64_t citations_prev1,
                                   uint64_t citations_prev2,
                                   uint64_t publications_prev1,
                                   uint64_t publications_prev2,
                                   uint64_t *numerator,
                                   uint64_t *denominator);

#endif  /* RSCI_H */
