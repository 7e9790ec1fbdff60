#ifndef PHX_PHX_H
#define PHX_PHX_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PHX_API __declspec(dllexport)
#else
#define PHX_API __attribute__((visibility("default")))
#endif

/* Values match the CLI exit codes. */
typedef enum {
    PHX_OK = 0,
    PHX_ERR_INTERNAL = 1,
    PHX_ERR_CONFIG = 2,
    PHX_ERR_DOMAIN = 3,
    PHX_ERR_VALIDATION = 4,
    PHX_ERR_ARGUMENT = 5
} phx_status;

typedef struct phx_series phx_series;
typedef struct phx_problem phx_problem;

/* Message of the last failed call on this thread ("" if none). */
PHX_API const char* phx_last_error(void);
PHX_API const char* phx_version(void);

/* Strings returned through char** are owned by the caller. */
PHX_API void phx_string_free(char* s);

/* Problem from config text or file; only the [problem] section is used. */
PHX_API phx_status phx_problem_from_config(const char* text, phx_problem** out);
PHX_API phx_status phx_problem_from_file(const char* path, phx_problem** out);
PHX_API void phx_problem_free(phx_problem* p);
PHX_API phx_status phx_problem_roots(const phx_problem* p, int* m_low, int* m_high);

PHX_API phx_status phx_match(const phx_problem* p, phx_series** out);
PHX_API phx_status phx_iterate(const phx_problem* p, phx_series** out);
/* The exact expansion when the problem has one, else PHX_ERR_DOMAIN. */
PHX_API phx_status phx_oracle(const phx_problem* p, phx_series** out);
/* *zero = 1 when F(V) - L0 v vanishes identically at the series' order. */
PHX_API phx_status phx_residual_zero(const phx_problem* p, const phx_series* s, int* zero);

PHX_API phx_status phx_series_to_json(const phx_series* s, char** json);
PHX_API phx_status phx_series_from_json(const char* json, phx_series** out);
PHX_API int phx_series_equal(const phx_series* a, const phx_series* b);
/* Coefficient of x'^0 t^i (log t)^j as "num/den". */
PHX_API phx_status phx_series_coeff(const phx_series* s, int i, int j, char** rational);
PHX_API void phx_series_free(phx_series* s);

/* Runs a full config; *report receives the text the CLI prints.  The
   return value is the run's exit code.  out_dir and command may be NULL;
   when set they replace [output] dir and the configured command. */
PHX_API phx_status phx_run(const char* config_text, const char* out_dir, const char* command, char** report);
PHX_API phx_status phx_run_file(const char* path, const char* out_dir, const char* command, char** report);

PHX_API phx_status phx_indicial_roots(long p, long q, int* m_low, int* m_high);
PHX_API phx_status phx_friedman_constants(const char* A0, const char* A1, const char* A2, const char* B0,
                                          char** B1, char** B0_tilde);
/* c31 is NULL unless n == 3. */
PHX_API phx_status phx_ln_local_coeffs(int n, const char* H, const char* K, const char* lap_H, char** c1,
                                       char** c31);

#ifdef __cplusplus
}
#endif

#endif
