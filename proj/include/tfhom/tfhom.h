/*
 * tfhom C interface.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every fallible call returns a tfh_status; the
 * message for the most recent failure on the calling thread is available from
 * tfh_last_error().
 *
 * Time steps are 0-based here: step k sits at t = k * dt, step 0 is the
 * interpolated initial data.
 */
#ifndef TFHOM_H
#define TFHOM_H

#include <stddef.h>

#if defined(_WIN32)
#  ifdef TFHOM_BUILDING_LIBRARY
#    define TFH_API __declspec(dllexport)
#  else
#    define TFH_API __declspec(dllimport)
#  endif
#else
#  define TFH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tfh_status {
  TFH_OK = 0,
  TFH_ERR_CONFIG = 1,
  TFH_ERR_NUMERICAL = 2,
  TFH_ERR_ARGUMENT = 3,
  TFH_ERR_IO = 4,
  TFH_ERR_INTERNAL = 5
} tfh_status;

typedef struct tfh_cell tfh_cell;
typedef struct tfh_run tfh_run;

TFH_API const char* tfh_version(void);
TFH_API const char* tfh_last_error(void);

/* Process exit code for a status: 0 ok, 1 configuration, 2 numerical. */
TFH_API int tfh_exit_code(tfh_status status);

/* Runs a CLI subcommand ("cell", "fine", "homogenize", "corrector", "study",
 * "snapshots", "oracle") from a JSON configuration object; progress and
 * tables go to stdout. */
TFH_API tfh_status tfh_command_run(const char* command, const char* config_json);

/* Cell problems and the effective tensor. kappa_star is row-major. */
TFH_API tfh_status tfh_cell_solve(const char* field_id, int n_cell, tfh_cell** out);
TFH_API void tfh_cell_free(tfh_cell* cell);
TFH_API tfh_status tfh_cell_kappa_star(const tfh_cell* cell, double kappa_star[4]);
/* chi_j (j = 1 or 2) at an arbitrary point of the plane. */
TFH_API tfh_status tfh_cell_chi(const tfh_cell* cell, int j, double y1, double y2, double* value);

/* L1-scheme runs on the unit square with homogeneous Dirichlet data. */
TFH_API tfh_status tfh_run_fine(const char* field_id, double eps, double alpha, int grid_n, double dt, double T,
                                const char* initial_id, tfh_run** out);
TFH_API tfh_status tfh_run_homogenized(const double kappa_star[4], double alpha, int grid_n, double dt, double T,
                                       const char* initial_id, tfh_run** out);
TFH_API void tfh_run_free(tfh_run* run);
TFH_API int tfh_run_steps(const tfh_run* run);
TFH_API size_t tfh_run_node_count(const tfh_run* run);
/* Copies the nodal field of step k into buffer (length >= node count). */
TFH_API tfh_status tfh_run_snapshot(const tfh_run* run, int step, double* buffer, size_t length);

/* First-order approximation at step k of a homogenized run. theta <= 0 gives
 * U1; theta > 0 gives the cut-off variant. */
TFH_API tfh_status tfh_corrector_build(const tfh_run* homogenized, const tfh_cell* cell, double eps, double theta,
                                       int step, double* buffer, size_t length);

/* Norms of fine(step) - approx: out = {t, abs_l2, rel_l2, abs_h1, rel_h1}. */
TFH_API tfh_status tfh_compare(const tfh_run* fine, int step, const double* approx, size_t length, double out[5]);

TFH_API tfh_status tfh_estimate_rate(const double* eps, const double* errors, size_t count, double* rate);
TFH_API tfh_status tfh_mittag_leffler(double alpha, double z, double* value);
/* b must hold steps + 1 entries. */
TFH_API tfh_status tfh_l1_weights(double alpha, int steps, double dt, double* b, size_t length, double* gamma_factor);

#ifdef __cplusplus
}
#endif

#endif /* TFHOM_H */
