/* C interface to the slantlab verification engine. */
#ifndef SLANTLAB_SLANTLAB_H
#define SLANTLAB_SLANTLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(SLANTLAB_BUILDING_LIBRARY)
#define SLANTLAB_API __attribute__((visibility("default")))
#else
#define SLANTLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Return codes of every fallible call. The message of the last failure on the
 * calling thread is available from slantlab_last_error(). */
typedef enum slantlab_error {
  SLANTLAB_OK = 0,
  SLANTLAB_ERR_INVALID_ARGUMENT = 1, /* null handle, bad index, bad option value */
  SLANTLAB_ERR_PARSE = 2,            /* scenario or expression syntax */
  SLANTLAB_ERR_USAGE = 3,            /* unknown names, missing scenario parts */
  SLANTLAB_ERR_IO = 4,
  SLANTLAB_ERR_DOMAIN = 5,           /* stencil leaves the parameter domain */
  SLANTLAB_ERR_EVALUATION = 6,       /* non-finite expression values */
  SLANTLAB_ERR_GEOMETRY = 7,         /* degenerate frames, xi not tangent, ... */
  SLANTLAB_ERR_NOT_FOUND = 8,        /* optional result absent */
  SLANTLAB_ERR_INTERNAL = 9
} slantlab_error;

typedef enum slantlab_run_status {
  SLANTLAB_RUN_PASS = 0,
  SLANTLAB_RUN_CHECK_FAILED = 1,
  SLANTLAB_RUN_USAGE_ERROR = 2
} slantlab_run_status;

typedef enum slantlab_format {
  SLANTLAB_FORMAT_TABLE = 0,
  SLANTLAB_FORMAT_RECORDS = 1
} slantlab_format;

typedef struct slantlab_options slantlab_options;
typedef struct slantlab_run slantlab_run;

/* Borrowed view of one check record; pointers stay valid until the run is
 * destroyed. */
typedef struct slantlab_record {
  const char* name;
  double residual;
  double tolerance;
  int passed;
  int diagnostic;
  size_t samples;
  const double* point;
  size_t point_size;
} slantlab_record;

typedef struct slantlab_slant_summary {
  const char* classification; /* "invariant", "anti-invariant", "proper-slant", "non-slant" */
  double lambda_fit;
  double theta;
  double fit_residual;
  double theta_spread;
  size_t spectrum_size;
  const double* spectrum_values;
  const int* spectrum_multiplicities;
} slantlab_slant_summary;

SLANTLAB_API const char* slantlab_version(void);
SLANTLAB_API const char* slantlab_last_error(void);

SLANTLAB_API slantlab_options* slantlab_options_create(void);
SLANTLAB_API void slantlab_options_destroy(slantlab_options* opts);
/* Seed that overrides the scenario file. */
SLANTLAB_API int slantlab_options_set_seed(slantlab_options* opts, uint64_t seed);
/* Seed used when the scenario file has none (e.g. from SLANTLAB_SEED). */
SLANTLAB_API int slantlab_options_set_default_seed(slantlab_options* opts, uint64_t seed);
SLANTLAB_API int slantlab_options_set_samples(slantlab_options* opts, size_t count);
SLANTLAB_API int slantlab_options_set_fd_step(slantlab_options* opts, double step);
SLANTLAB_API int slantlab_options_set_tolerance(slantlab_options* opts, const char* name, double value);
/* Comma-separated check names; replaces the scenario's check list. */
SLANTLAB_API int slantlab_options_set_checks(slantlab_options* opts, const char* checks);

/* opts may be NULL. On success *out owns a run to release with
 * slantlab_run_destroy. */
SLANTLAB_API int slantlab_run_file(const char* path, const slantlab_options* opts, slantlab_run** out);
SLANTLAB_API int slantlab_run_text(const char* text, const slantlab_options* opts, slantlab_run** out);
SLANTLAB_API int slantlab_verify_ambient(const char* model, const slantlab_options* opts, slantlab_run** out);
SLANTLAB_API void slantlab_run_destroy(slantlab_run* run);

SLANTLAB_API slantlab_run_status slantlab_run_get_status(const slantlab_run* run);
SLANTLAB_API size_t slantlab_run_record_count(const slantlab_run* run);
SLANTLAB_API int slantlab_run_get_record(const slantlab_run* run, size_t index, slantlab_record* out);
/* Q-fit slant report; SLANTLAB_ERR_NOT_FOUND unless the slant check ran. */
SLANTLAB_API int slantlab_run_get_slant(const slantlab_run* run, slantlab_slant_summary* out);
/* Curvature-based slant report; SLANTLAB_ERR_NOT_FOUND unless theorem42 ran. */
SLANTLAB_API int slantlab_run_get_curvature_slant(const slantlab_run* run, slantlab_slant_summary* out);
SLANTLAB_API double slantlab_run_wall_time(const slantlab_run* run);

/* Rendered text; release with slantlab_string_free. NULL on failure. */
SLANTLAB_API char* slantlab_run_render(const slantlab_run* run, slantlab_format format);
SLANTLAB_API char* slantlab_list(int checks_only, slantlab_format format);
SLANTLAB_API void slantlab_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* SLANTLAB_SLANTLAB_H */
