#ifndef FLAGBOTT_FLAGBOTT_H
#define FLAGBOTT_FLAGBOTT_H

/* C interface to the flagbott library. Handles are opaque; every function
 * returns an fb_status and, on failure, sets a thread-local message readable
 * through fb_last_error(). Strings returned through char** are owned by the
 * caller and released with fb_string_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(FLAGBOTT_BUILDING_LIBRARY)
#define FLAGBOTT_API __attribute__((visibility("default")))
#else
#define FLAGBOTT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fb_tower fb_tower;
typedef struct fb_fan fb_fan;

typedef enum fb_status {
  FB_OK = 0,
  FB_ERR_DIMENSION,
  FB_ERR_NOT_UNIMODULAR,
  FB_ERR_INVALID_RAY_LABEL,
  FB_ERR_INVALID_CHAIN,
  FB_ERR_INVALID_DIMENSION,
  FB_ERR_INVALID_INDICES,
  FB_ERR_SAMPLING_EXHAUSTED,
  FB_ERR_NOT_INVERTIBLE,
  FB_ERR_ENUMERATION_TOO_LARGE,
  FB_ERR_INVALID_STAGE_PAIR,
  FB_ERR_ORACLE_FAILURE,
  FB_ERR_NOT_SIMPLICIAL,
  FB_ERR_INVALID_TOWER,
  FB_ERR_INVALID_ARGUMENT,
  FB_ERR_PARSE,
  FB_ERR_INTERNAL
} fb_status;

enum {
  FB_CHECK_SMOOTH = 1,
  FB_CHECK_COMPLETE = 2,
  FB_CHECK_PAIRING = 4,
  FB_CHECK_BUNDLE = 8,
  FB_CHECK_ORACLE = 16,
  FB_CHECK_ALL = 31
};

FLAGBOTT_API const char* fb_version(void);
FLAGBOTT_API const char* fb_status_name(fb_status status);
/* Message of the last failed call on this thread, "" if none. */
FLAGBOTT_API const char* fb_last_error(void);
FLAGBOTT_API void fb_string_free(char* s);

/* Parses and validates a JSON tower spec. */
FLAGBOTT_API fb_status fb_tower_parse_json(const char* text, size_t length, fb_tower** out);
FLAGBOTT_API fb_status fb_tower_load_json(const char* path, fb_tower** out);
FLAGBOTT_API void fb_tower_free(fb_tower* t);
FLAGBOTT_API int fb_tower_stages(const fb_tower* t);
FLAGBOTT_API int fb_tower_rank(const fb_tower* t);

/* cone_cap = 0 selects the library default. */
FLAGBOTT_API fb_status fb_fan_build(const fb_tower* t, uint64_t cone_cap, fb_fan** out);
FLAGBOTT_API void fb_fan_free(fb_fan* f);
FLAGBOTT_API fb_status fb_fan_counts(const fb_fan* f, uint64_t* rays, uint64_t* cones);
FLAGBOTT_API fb_status fb_fan_export(const fb_fan* f, char** text);
FLAGBOTT_API fb_status fb_fan_write(const fb_fan* f, const char* path);
FLAGBOTT_API fb_status fb_fan_ray_table(const fb_fan* f, char** text);

/* Runs the checks selected by `checks` (FB_CHECK_* bits). *passed is 1 when
 * all of them hold. *report, if non-null, receives one line per check plus
 * the violations found. FB_OK means the checks ran, not that they passed. */
FLAGBOTT_API fb_status fb_verify(const fb_tower* t, const fb_fan* f, unsigned checks,
                                 int* passed, char** report);

/* Writes a generic (n+1) x (n+1) matrix, row-major, to out[(n+1)^2]. */
FLAGBOTT_API fb_status fb_sample_generic(int n, int64_t bound, uint64_t seed, uint64_t retries,
                                         int64_t* out);

#ifdef __cplusplus
}
#endif

#endif
