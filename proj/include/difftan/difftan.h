#ifndef DIFFTAN_DIFFTAN_H
#define DIFFTAN_DIFFTAN_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(DIFFTAN_BUILDING)
#define DIFFTAN_API __attribute__((visibility("default")))
#else
#define DIFFTAN_API
#endif

typedef enum difftan_status {
  DIFFTAN_OK = 0,
  DIFFTAN_ERR_PARSE = 1,
  DIFFTAN_ERR_INVALID_PARAMETER = 2,
  DIFFTAN_ERR_POINT_NOT_IN_SPACE = 3,
  DIFFTAN_ERR_UNDECIDABLE = 4,
  DIFFTAN_ERR_MALFORMED_CANDIDATE = 5,
  DIFFTAN_ERR_NOT_MEMBERS = 6,
  DIFFTAN_ERR_UNSUPPORTED = 7,
  DIFFTAN_ERR_ARITHMETIC = 8,
  DIFFTAN_ERR_COMPUTATION = 9,
  DIFFTAN_ERR_NULL_ARGUMENT = 10,
  DIFFTAN_ERR_INTERNAL = 11
} difftan_status;

typedef enum difftan_format { DIFFTAN_FORMAT_JSON = 0, DIFFTAN_FORMAT_TEXT = 1 } difftan_format;

typedef struct difftan_space difftan_space;

typedef struct difftan_options {
  unsigned order;      /* truncation order, 0 means 4 */
  const char* slopes;  /* comma-separated exact numbers, NULL for the default */
  difftan_format format;
} difftan_options;

/* Error code name and message of the last failure on this thread. */
DIFFTAN_API const char* difftan_last_error(void);
DIFFTAN_API const char* difftan_last_error_code(void);
DIFFTAN_API const char* difftan_status_name(difftan_status s);

DIFFTAN_API void difftan_string_free(char* s);

DIFFTAN_API difftan_status difftan_space_parse(const char* text, difftan_space** out);
DIFFTAN_API void difftan_space_free(difftan_space* space);
DIFFTAN_API difftan_status difftan_space_render(const difftan_space* space, char** out);
DIFFTAN_API difftan_status difftan_space_contains(const difftan_space* space, const char* point, int* out);

/* Reports are allocated strings; release them with difftan_string_free. */
DIFFTAN_API difftan_status difftan_report_internal(const difftan_space* space, const char* point,
                                                   const difftan_options* opts, char** out);
DIFFTAN_API difftan_status difftan_report_external(const difftan_space* space, const char* point,
                                                   const difftan_options* opts, char** out);
DIFFTAN_API difftan_status difftan_report_beta(const difftan_space* space, const char* point,
                                               const difftan_options* opts, char** out);

/* base and fibre are polynomial tuples in the comma-separated variables vars. */
DIFFTAN_API difftan_status difftan_bundle_check(const difftan_space* space, const char* vars, const char* base,
                                                const char* fibre, const difftan_options* opts, char** out);
DIFFTAN_API difftan_status difftan_fibrewise(const difftan_space* space, const char* vars, const char* base,
                                             const char* first, const char* second, const difftan_options* opts,
                                             char** out);
DIFFTAN_API difftan_status difftan_trivialize(const difftan_space* space, const difftan_options* opts, char** out);
DIFFTAN_API difftan_status difftan_fine(const difftan_space* space, const char* point, const difftan_options* opts,
                                        char** out);
DIFFTAN_API difftan_status difftan_table(const difftan_options* opts, char** out, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif
