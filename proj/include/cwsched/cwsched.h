/* C interface of the carbon/water-aware batch scheduling simulator. */
#ifndef CWSCHED_H
#define CWSCHED_H

#include <stddef.h>

#if defined(_WIN32)
#  define CWS_API __declspec(dllexport)
#else
#  define CWS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as process exit codes. */
typedef enum cws_status {
  CWS_OK = 0,
  CWS_ERR_RUN = 1,   /* failure while simulating valid inputs */
  CWS_ERR_INPUT = 2  /* unreadable/malformed input or config */
} cws_status;

/* Opaque run configuration handle. */
typedef struct cws_config cws_config;

CWS_API const char* cws_version(void);

/* Fresh configuration with built-in defaults. Never fails. */
CWS_API cws_config* cws_config_new(void);

/* Parses a config file; NULL on failure with the message in err. */
CWS_API cws_config* cws_config_load(const char* path, char* err, size_t err_cap);

/* Sets one "section.key" to a value, e.g. ("scheduler.tolerance", "0.5"). */
CWS_API int cws_config_set(cws_config* cfg, const char* key, const char* value,
                           char* err, size_t err_cap);

/* Canonical text form of the config; free with cws_free. */
CWS_API char* cws_config_dump(const cws_config* cfg);

CWS_API void cws_config_free(cws_config* cfg);
CWS_API void cws_free(char* s);

/* Runs every configured policy at the configured tolerance; writes
 * outcomes_<policy>.csv, metrics.csv, overhead.csv and config.resolved.ini
 * into out_dir. A NULL out_dir uses the config's run.out_dir. */
CWS_API int cws_run(const cws_config* cfg, const char* out_dir, char* err,
                    size_t err_cap);

/* Runs the policy x tolerance x capacity-scale grid of the config. */
CWS_API int cws_sweep(const cws_config* cfg, const char* out_dir, char* err,
                      size_t err_cap);

/* Pivots metrics.csv files into a series.csv of savings per policy. */
CWS_API int cws_plotdata(const char* const* metrics_paths, size_t count,
                         const char* out_path, char* err, size_t err_cap);

#ifdef __cplusplus
}
#endif

#endif /* CWSCHED_H */
