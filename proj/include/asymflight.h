/* C interface to the asymflight flight dynamics library.
 *
 * All quantities are SI with angles in radians unless a function takes an
 * af_units argument (file boundaries only). Functions return AF_OK or an
 * error status; af_last_error() holds the message for the calling thread.
 * Output paths of "-" mean standard output. */
#ifndef ASYMFLIGHT_H
#define ASYMFLIGHT_H

#include <stddef.h>

#if defined(_WIN32)
#define AF_API __declspec(dllexport)
#else
#define AF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum af_status {
  AF_OK = 0,
  AF_ERR_INVALID_ARGUMENT = 1,
  AF_ERR_PARSE = 2,
  AF_ERR_IO = 3,
  AF_ERR_VALIDATION = 4,
  AF_ERR_ALTITUDE_OUT_OF_RANGE = 5,
  AF_ERR_HOVER_SINGULARITY = 6,
  AF_ERR_SIDESLIP_SINGULARITY = 7,
  AF_ERR_GIMBAL_SINGULARITY = 8,
  AF_ERR_PURE_SIDESLIP = 9,
  AF_ERR_UNDEFINED_FLANK = 10,
  AF_ERR_SINGULAR_ELEVATOR = 11,
  AF_ERR_SINGULAR_CONTROL_EFFECTIVENESS = 12,
  AF_ERR_SINGULAR_INERTIA = 13,
  AF_ERR_NOT_SYMMETRIC = 14,
  AF_ERR_UNATTAINABLE_TRIM = 15,
  AF_ERR_NON_UNIFORM_SAMPLING = 16,
  AF_ERR_TOO_FEW_SAMPLES = 17,
  AF_ERR_NO_CONVERGENCE = 18,
  AF_ERR_SINGULAR_JACOBIAN = 19,
  AF_ERR_INTERNAL = 100
} af_status;

typedef enum af_units { AF_UNITS_DEG = 0, AF_UNITS_RAD = 1 } af_units;
typedef enum af_mode { AF_MODE_DERIVATION = 0, AF_MODE_PAPER_LITERAL = 1 } af_mode;
typedef enum af_constraint { AF_CONSTRAINT_BETA = 0, AF_CONSTRAINT_PHI = 1 } af_constraint;
typedef enum af_interp { AF_INTERP_LINEAR = 0, AF_INTERP_ZOH = 1 } af_interp;
typedef enum af_trim_mode { AF_TRIM_EXACT = 0, AF_TRIM_REDUCED = 1 } af_trim_mode;

typedef struct af_airframe af_airframe;
typedef struct af_schedule af_schedule;
typedef struct af_path af_path;
typedef struct af_trajectory af_trajectory;
typedef struct af_inverse af_inverse;

typedef struct af_state {
  double V, beta, alpha;
  double p, q, r;
  double phi, theta, psi;
  double x_g, y_g, z_g;
} af_state;

AF_API const char* af_last_error(void);
AF_API const char* af_status_name(af_status status);
/* 0 success, 1 usage, 2 validation, 3 numerical failure. */
AF_API int af_exit_code(af_status status);

/* Airframe */
AF_API af_status af_airframe_load(const char* path, af_airframe** out);
AF_API af_status af_airframe_parse(const char* text, af_airframe** out);
AF_API af_status af_airframe_get(const af_airframe* airframe, const char* key, double* value);
AF_API void af_airframe_free(af_airframe* airframe);

/* Atmosphere */
typedef struct af_atmosphere_sample {
  double rho, sigma, theta, pressure, speed_of_sound;
} af_atmosphere_sample;

AF_API af_status af_atmosphere(double h, af_atmosphere_sample* out);
AF_API af_status af_atmosphere_table_write(double h_min, double h_max, double step,
                                           const char* path);

/* Trim */
typedef struct af_trim {
  double alpha, delta_m, thrust, theta, qbar, C_L, C_D;
  int stall_warning;
} af_trim;

AF_API af_status af_trim_solve(const af_airframe* airframe, double V, double h,
                               af_trim_mode mode, double v_min, af_trim* out);
AF_API af_status af_trim_state(const af_airframe* airframe, const af_trim* trim, double V,
                               double h, double psi, af_state* out);

/* Initial state file: `key = value` for the 12 state names of af_state. */
AF_API af_status af_state_load(const char* path, af_units units, af_state* out);

/* Control schedules */
AF_API af_status af_schedule_load(const char* path, af_units units, af_interp interp,
                                  af_schedule** out);
AF_API af_status af_schedule_from_arrays(size_t n, const double* t, const double* delta_l,
                                         const double* delta_m, const double* delta_n,
                                         const double* thrust, af_interp interp,
                                         af_schedule** out);
AF_API af_status af_schedule_constant(const af_trim* trim, double t_end, af_schedule** out);
AF_API double af_schedule_end_time(const af_schedule* schedule);
AF_API void af_schedule_free(af_schedule* schedule);

/* Direct simulation */
typedef struct af_sim_config {
  double dt, t_end;
  af_state initial;
  af_mode mode;
  double v_min;
  size_t decimation;
} af_sim_config;

typedef struct af_extrema {
  double alpha_min, alpha_max;
  double delta_l_min, delta_l_max;
  double delta_m_min, delta_m_max;
  double delta_n_min, delta_n_max;
  double thrust_min, thrust_max;
  double max_load_factor;
  size_t stall_warnings;
} af_extrema;

AF_API void af_sim_config_default(af_sim_config* config);
/* On a numerical failure mid-run *out still receives the partial record and
 * the failure status is returned. */
AF_API af_status af_simulate(const af_sim_config* config, const af_schedule* schedule,
                             const af_airframe* airframe, af_trajectory** out);
AF_API size_t af_trajectory_rows(const af_trajectory* trajectory);
AF_API af_status af_trajectory_state(const af_trajectory* trajectory, size_t i, double* t,
                                     af_state* out);
AF_API af_status af_trajectory_extrema(const af_trajectory* trajectory, af_extrema* out);
AF_API af_status af_trajectory_write(const af_trajectory* trajectory, const char* path,
                                     af_units units);
AF_API void af_trajectory_free(af_trajectory* trajectory);

/* Inverse simulation */
enum {
  AF_SAT_DELTA_L = 1,
  AF_SAT_DELTA_M = 2,
  AF_SAT_DELTA_N = 4,
  AF_SAT_NEGATIVE_THRUST = 8,
  AF_SAT_STALL = 16
};

typedef struct af_inverse_options {
  double tol;
  int max_iter;
  af_mode mode;
  double v_min;
  double deflection_limit;
  double alpha_limit;
} af_inverse_options;

typedef struct af_inverse_row {
  double t;
  double delta_l, delta_m, delta_n, thrust;
  double residual, consistency;
  int iterations;
  unsigned saturation;
} af_inverse_row;

AF_API af_status af_path_load(const char* path, af_units units, af_constraint constraint,
                              af_path** out);
/* constraint_values may be NULL (identically zero). */
AF_API af_status af_path_from_arrays(size_t n, const double* t, const double* x_g,
                                     const double* y_g, const double* z_g,
                                     const double* constraint_values, af_constraint constraint,
                                     af_path** out);
AF_API void af_path_free(af_path* path);

AF_API void af_inverse_options_default(af_inverse_options* options);
AF_API af_status af_inverse_solve(const af_path* path, const af_airframe* airframe,
                                  const af_inverse_options* options, af_inverse** out);
AF_API size_t af_inverse_rows(const af_inverse* result);
/* state may be NULL. */
AF_API af_status af_inverse_row_get(const af_inverse* result, size_t i, af_inverse_row* row,
                                    af_state* state);
AF_API af_status af_inverse_write(const af_inverse* result, const char* path, af_units units);
AF_API void af_inverse_free(af_inverse* result);

#ifdef __cplusplus
}
#endif

#endif
