#include "asymflight.h"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "asymflight/atmosphere.hpp"
#include "asymflight/error.hpp"
#include "asymflight/io.hpp"

using namespace asymflight;

struct af_airframe {
  AirframeParams params;
};
struct af_schedule {
  ControlSchedule schedule;
};
struct af_path {
  TrajectorySpec spec;
};
struct af_trajectory {
  TrajectoryRecord record;
};
struct af_inverse {
  InverseSolution solution;
};

namespace {

thread_local std::string last_error;

af_status fail(af_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
af_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const FlightError& e) {
    return fail(static_cast<af_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(AF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(AF_ERR_INTERNAL, e.what());
  }
}

af_status null_argument(const char* name) {
  return fail(AF_ERR_INVALID_ARGUMENT, std::string("null argument: ") + name);
}

io::AngleUnit unit_of(af_units u) { return u == AF_UNITS_RAD ? io::AngleUnit::rad : io::AngleUnit::deg; }
EquationMode mode_of(af_mode m) {
  return m == AF_MODE_PAPER_LITERAL ? EquationMode::paper_literal
                                    : EquationMode::derivation_consistent;
}
Interpolation interp_of(af_interp i) {
  return i == AF_INTERP_ZOH ? Interpolation::zero_order_hold : Interpolation::linear;
}
Constraint constraint_of(af_constraint c) {
  return c == AF_CONSTRAINT_PHI ? Constraint::bank : Constraint::sideslip;
}

af_state to_c(const FlightState& s) {
  const auto v = s.to_vector();
  return {v(0), v(1), v(2), v(3), v(4), v(5), v(6), v(7), v(8), v(9), v(10), v(11)};
}

FlightState from_c(const af_state& s) {
  FlightState::Vector v;
  v << s.V, s.beta, s.alpha, s.p, s.q, s.r, s.phi, s.theta, s.psi, s.x_g, s.y_g, s.z_g;
  return FlightState::from_vector(v);
}

TrimSolution trim_from_c(const af_trim& t) {
  TrimSolution s;
  s.alpha = t.alpha;
  s.delta_m = t.delta_m;
  s.thrust = t.thrust;
  s.theta = t.theta;
  s.qbar = t.qbar;
  s.C_L = t.C_L;
  s.C_D = t.C_D;
  s.stall_warning = t.stall_warning != 0;
  return s;
}

template <class Writer>
af_status write_to(const char* path, Writer&& writer) {
  if (path == nullptr) return null_argument("path");
  if (std::string(path) == "-") {
    writer(std::cout);
    std::cout.flush();
    return AF_OK;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) return fail(AF_ERR_IO, std::string("cannot write ") + path);
  writer(out);
  out.flush();
  if (!out) return fail(AF_ERR_IO, std::string("write failed: ") + path);
  return AF_OK;
}

std::vector<double> copy(const double* p, size_t n) { return std::vector<double>(p, p + n); }

}  // namespace

extern "C" {

const char* af_last_error(void) { return last_error.c_str(); }

const char* af_status_name(af_status status) {
  if (status == AF_OK) return "ok";
  if (status == AF_ERR_INTERNAL) return "internal";
  if (status >= AF_ERR_INVALID_ARGUMENT && status <= AF_ERR_SINGULAR_JACOBIAN) {
    return to_string(static_cast<ErrorCode>(status));
  }
  return "unknown";
}

int af_exit_code(af_status status) {
  switch (status) {
    case AF_OK:
      return 0;
    case AF_ERR_INVALID_ARGUMENT:
      return 1;
    case AF_ERR_PARSE:
    case AF_ERR_IO:
    case AF_ERR_VALIDATION:
    case AF_ERR_ALTITUDE_OUT_OF_RANGE:
    case AF_ERR_SINGULAR_ELEVATOR:
    case AF_ERR_SINGULAR_CONTROL_EFFECTIVENESS:
    case AF_ERR_NOT_SYMMETRIC:
    case AF_ERR_NON_UNIFORM_SAMPLING:
    case AF_ERR_TOO_FEW_SAMPLES:
      return 2;
    default:
      return 3;
  }
}

af_status af_airframe_load(const char* path, af_airframe** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new af_airframe{io::load_airframe(path)};
    return AF_OK;
  });
}

af_status af_airframe_parse(const char* text, af_airframe** out) {
  if (text == nullptr) return null_argument("text");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new af_airframe{io::parse_airframe(text)};
    return AF_OK;
  });
}

af_status af_airframe_get(const af_airframe* airframe, const char* key, double* value) {
  if (airframe == nullptr) return null_argument("airframe");
  if (key == nullptr) return null_argument("key");
  if (value == nullptr) return null_argument("value");
  return guarded([&] {
    const auto v = io::airframe_value(airframe->params, key);
    if (v) {
      *value = *v;
      return AF_OK;
    }
    return fail(AF_ERR_INVALID_ARGUMENT, std::string("unknown key: ") + key);
  });
}

void af_airframe_free(af_airframe* airframe) { delete airframe; }

af_status af_atmosphere(double h, af_atmosphere_sample* out) {
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto s = atmosphere::sample(h);
    *out = {s.rho, s.sigma, s.theta, s.P, s.a};
    return AF_OK;
  });
}

af_status af_atmosphere_table_write(double h_min, double h_max, double step, const char* path) {
  return guarded([&] {
    std::ostringstream table;
    io::write_atmosphere_table(table, h_min, h_max, step);
    return write_to(path, [&](std::ostream& out) { out << table.str(); });
  });
}

af_status af_trim_solve(const af_airframe* airframe, double V, double h, af_trim_mode mode,
                        double v_min, af_trim* out) {
  if (airframe == nullptr) return null_argument("airframe");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    const auto t = trim_steady_level(
        V, h, airframe->params, mode == AF_TRIM_REDUCED ? TrimMode::reduced : TrimMode::exact,
        v_min);
    *out = {t.alpha, t.delta_m, t.thrust, t.theta, t.qbar, t.C_L, t.C_D, t.stall_warning ? 1 : 0};
    return AF_OK;
  });
}

af_status af_trim_state(const af_airframe* airframe, const af_trim* trim, double V, double h,
                        double psi, af_state* out) {
  if (airframe == nullptr) return null_argument("airframe");
  if (trim == nullptr) return null_argument("trim");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = to_c(trim_state(trim_from_c(*trim), V, h, airframe->params, psi));
    return AF_OK;
  });
}

af_status af_state_load(const char* path, af_units units, af_state* out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = to_c(io::load_state(path, unit_of(units)));
    return AF_OK;
  });
}

af_status af_schedule_load(const char* path, af_units units, af_interp interp,
                           af_schedule** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new af_schedule{io::load_control_schedule(path, unit_of(units), interp_of(interp))};
    return AF_OK;
  });
}

af_status af_schedule_from_arrays(size_t n, const double* t, const double* delta_l,
                                  const double* delta_m, const double* delta_n,
                                  const double* thrust, af_interp interp, af_schedule** out) {
  if (!t || !delta_l || !delta_m || !delta_n || !thrust) return null_argument("array");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    std::vector<ControlInputs> u(n);
    for (size_t i = 0; i < n; ++i) u[i] = {delta_l[i], delta_m[i], delta_n[i], thrust[i]};
    *out = new af_schedule{ControlSchedule(copy(t, n), std::move(u), interp_of(interp))};
    return AF_OK;
  });
}

af_status af_schedule_constant(const af_trim* trim, double t_end, af_schedule** out) {
  if (trim == nullptr) return null_argument("trim");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new af_schedule{ControlSchedule::constant(trim_controls(trim_from_c(*trim)), t_end)};
    return AF_OK;
  });
}

double af_schedule_end_time(const af_schedule* schedule) {
  return schedule == nullptr ? 0.0 : schedule->schedule.end_time();
}

void af_schedule_free(af_schedule* schedule) { delete schedule; }

void af_sim_config_default(af_sim_config* config) {
  if (config == nullptr) return;
  const SimulationConfig d;
  config->dt = d.dt;
  config->t_end = d.t_end;
  config->initial = to_c(d.initial);
  config->mode = AF_MODE_DERIVATION;
  config->v_min = d.v_min;
  config->decimation = d.decimation;
}

af_status af_simulate(const af_sim_config* config, const af_schedule* schedule,
                      const af_airframe* airframe, af_trajectory** out) {
  if (config == nullptr) return null_argument("config");
  if (schedule == nullptr) return null_argument("schedule");
  if (airframe == nullptr) return null_argument("airframe");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    SimulationConfig cfg;
    cfg.dt = config->dt;
    cfg.t_end = config->t_end;
    cfg.initial = from_c(config->initial);
    cfg.mode = mode_of(config->mode);
    cfg.v_min = config->v_min;
    cfg.decimation = config->decimation;
    auto result = std::make_unique<af_trajectory>();
    result->record = simulate(cfg, schedule->schedule, airframe->params);
    const auto& rec = result->record;
    *out = result.release();
    if (rec.failure) {
      return fail(static_cast<af_status>(rec.failure_code.value_or(AF_ERR_INTERNAL)),
                  *rec.failure);
    }
    return AF_OK;
  });
}

size_t af_trajectory_rows(const af_trajectory* trajectory) {
  return trajectory == nullptr ? 0 : trajectory->record.rows.size();
}

af_status af_trajectory_state(const af_trajectory* trajectory, size_t i, double* t,
                              af_state* out) {
  if (trajectory == nullptr) return null_argument("trajectory");
  if (i >= trajectory->record.rows.size()) return fail(AF_ERR_INVALID_ARGUMENT, "row out of range");
  const auto& row = trajectory->record.rows[i];
  if (t != nullptr) *t = row.t;
  if (out != nullptr) *out = to_c(row.state);
  return AF_OK;
}

af_status af_trajectory_extrema(const af_trajectory* trajectory, af_extrema* out) {
  if (trajectory == nullptr) return null_argument("trajectory");
  if (out == nullptr) return null_argument("out");
  const auto& e = trajectory->record.extrema;
  *out = {e.alpha.min,   e.alpha.max,   e.delta_l.min, e.delta_l.max, e.delta_m.min,
          e.delta_m.max, e.delta_n.min, e.delta_n.max, e.thrust.min,  e.thrust.max,
          e.max_load_factor, e.stall_warnings};
  return AF_OK;
}

af_status af_trajectory_write(const af_trajectory* trajectory, const char* path,
                              af_units units) {
  if (trajectory == nullptr) return null_argument("trajectory");
  return guarded([&] {
    return write_to(path, [&](std::ostream& out) {
      io::write_trajectory_csv(out, trajectory->record, unit_of(units));
    });
  });
}

void af_trajectory_free(af_trajectory* trajectory) { delete trajectory; }

af_status af_path_load(const char* path, af_units units, af_constraint constraint,
                       af_path** out) {
  if (path == nullptr) return null_argument("path");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    *out = new af_path{io::load_trajectory_spec(path, unit_of(units), constraint_of(constraint))};
    return AF_OK;
  });
}

af_status af_path_from_arrays(size_t n, const double* t, const double* x_g, const double* y_g,
                              const double* z_g, const double* constraint_values,
                              af_constraint constraint, af_path** out) {
  if (!t || !x_g || !y_g || !z_g) return null_argument("array");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    TrajectorySpec spec;
    spec.t = copy(t, n);
    spec.x_g = copy(x_g, n);
    spec.y_g = copy(y_g, n);
    spec.z_g = copy(z_g, n);
    spec.constraint = constraint_of(constraint);
    if (constraint_values != nullptr) spec.constraint_values = copy(constraint_values, n);
    *out = new af_path{std::move(spec)};
    return AF_OK;
  });
}

void af_path_free(af_path* path) { delete path; }

void af_inverse_options_default(af_inverse_options* options) {
  if (options == nullptr) return;
  const InverseOptions d;
  *options = {d.tol, d.max_iter, AF_MODE_DERIVATION, d.v_min, d.deflection_limit, d.alpha_limit};
}

af_status af_inverse_solve(const af_path* path, const af_airframe* airframe,
                           const af_inverse_options* options, af_inverse** out) {
  if (path == nullptr) return null_argument("path");
  if (airframe == nullptr) return null_argument("airframe");
  if (out == nullptr) return null_argument("out");
  return guarded([&] {
    InverseOptions opts;
    if (options != nullptr) {
      opts.tol = options->tol;
      opts.max_iter = options->max_iter;
      opts.mode = mode_of(options->mode);
      opts.v_min = options->v_min;
      opts.deflection_limit = options->deflection_limit;
      opts.alpha_limit = options->alpha_limit;
    }
    *out = new af_inverse{inverse_simulate(path->spec, airframe->params, opts)};
    return AF_OK;
  });
}

size_t af_inverse_rows(const af_inverse* result) {
  return result == nullptr ? 0 : result->solution.steps.size();
}

af_status af_inverse_row_get(const af_inverse* result, size_t i, af_inverse_row* row,
                             af_state* state) {
  if (result == nullptr) return null_argument("result");
  if (i >= result->solution.steps.size()) return fail(AF_ERR_INVALID_ARGUMENT, "row out of range");
  const auto& s = result->solution.steps[i];
  if (row != nullptr) {
    unsigned sat = 0;
    if (s.flags.delta_l) sat |= AF_SAT_DELTA_L;
    if (s.flags.delta_m) sat |= AF_SAT_DELTA_M;
    if (s.flags.delta_n) sat |= AF_SAT_DELTA_N;
    if (s.flags.negative_thrust) sat |= AF_SAT_NEGATIVE_THRUST;
    if (s.flags.stall) sat |= AF_SAT_STALL;
    *row = {s.t,           s.controls.delta_l, s.controls.delta_m, s.controls.delta_n,
            s.controls.thrust, s.residual_norm, s.consistency,     s.iterations,
            sat};
  }
  if (state != nullptr) *state = to_c(s.state);
  return AF_OK;
}

af_status af_inverse_write(const af_inverse* result, const char* path, af_units units) {
  if (result == nullptr) return null_argument("result");
  return guarded([&] {
    return write_to(path, [&](std::ostream& out) {
      io::write_inverse_csv(out, result->solution, unit_of(units));
    });
  });
}

void af_inverse_free(af_inverse* result) { delete result; }

}  // extern "C"
