/* C interface to the penalized MHD library. Strings returned through char**
 * out-parameters are owned by the caller and released with pmhd_string_free. */
#ifndef PMHD_PMHD_H
#define PMHD_PMHD_H

#include <stdint.h>

#if defined(__GNUC__)
#define PMHD_API __attribute__((visibility("default")))
#else
#define PMHD_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values 1-3 match the process exit codes of a run. */
typedef enum pmhd_status {
    PMHD_OK = 0,
    PMHD_ERR_CONFIG = 1,
    PMHD_ERR_INVARIANT = 2,
    PMHD_ERR_SOLVER = 3,
    PMHD_ERR_IO = 4,
    PMHD_ERR_ARGUMENT = 5,
    PMHD_ERR_INTERNAL = 6
} pmhd_status;

typedef struct pmhd_config pmhd_config;

typedef struct pmhd_run_summary {
    int exit_code;
    long steps_done;
    double initial_energy;
    double worst_slack_ratio;
    double max_div_b;
    double max_mass_drift;
} pmhd_run_summary;

typedef void (*pmhd_log_fn)(const char* line, void* user);

PMHD_API const char* pmhd_version(void);
/* Message of the last failure on this thread; empty after a success. */
PMHD_API const char* pmhd_last_error(void);
PMHD_API void pmhd_string_free(char* s);

/* Reads, parses and checks a config file, including its initial data. */
PMHD_API pmhd_status pmhd_config_load(const char* path, pmhd_config** out);
PMHD_API pmhd_status pmhd_config_parse(const char* text, pmhd_config** out);
PMHD_API void pmhd_config_free(pmhd_config* cfg);

PMHD_API pmhd_status pmhd_config_set_steps(pmhd_config* cfg, long steps);
PMHD_API pmhd_status pmhd_config_set_seed(pmhd_config* cfg, uint64_t seed);
PMHD_API pmhd_status pmhd_config_set_out_dir(pmhd_config* cfg, const char* dir);

/* INI text with every default filled in. */
PMHD_API pmhd_status pmhd_config_normalized(const pmhd_config* cfg, char** text);
/* One warning per line; empty when there are none. */
PMHD_API pmhd_status pmhd_config_warnings(const pmhd_config* cfg, char** text);

/* Runs the configured simulation. The status mirrors summary->exit_code;
 * artifacts land in the configured output directory. log may be NULL. */
PMHD_API pmhd_status pmhd_run(const pmhd_config* cfg, pmhd_log_fn log, void* user, pmhd_run_summary* summary);

/* key: value report of the characteristic scales, the approximation checks
 * and the dimensionless parameters. Needs a [scales] section. */
PMHD_API pmhd_status pmhd_nondim_report(const pmhd_config* cfg, char** text);

/* CSV of the interface-condition rate studies over `count` sizes halving from
 * first_size, with jump layers of the given thickness. */
PMHD_API pmhd_status pmhd_pillbox_csv(double first_size, int count, double thickness, char** csv);

#ifdef __cplusplus
}
#endif

#endif
