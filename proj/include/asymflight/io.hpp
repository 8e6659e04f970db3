#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asymflight/inverse.hpp"
#include "asymflight/sim.hpp"

namespace asymflight::io {

// Angles (and angular rates) in external files; internal values are radians.
enum class AngleUnit { deg, rad };

double to_internal(double value, AngleUnit unit);
double to_external(double value, AngleUnit unit);
const char* angle_suffix(AngleUnit unit);  // "deg" or "rad"

// The 30 required airframe keys, in canonical order. `alpha_warn` is also
// accepted (optional, radians).
const std::vector<std::string>& airframe_keys();

// Flat `key = value` text, one key per line, `#` starts a comment. Values are
// SI with angle-dependent derivatives per radian. Throws parse_error with a
// line number, or validation errors from the airframe checks.
AirframeParams parse_airframe(std::string_view text);
std::optional<double> airframe_value(const AirframeParams& params, const std::string& key);
AirframeParams load_airframe(const std::string& path);
std::string format_airframe(const AirframeParams& params);

// `key = value` for V, beta, alpha, p, q, r, phi, theta, psi, x_g, y_g, z_g;
// angles and rates in the given unit, everything else SI.
FlightState parse_state(std::string_view text, AngleUnit unit);
FlightState load_state(const std::string& path, AngleUnit unit);

// Header `t,delta_l,delta_m,delta_n,thrust`.
ControlSchedule parse_control_schedule(std::string_view text, AngleUnit unit,
                                       Interpolation mode = Interpolation::linear);
ControlSchedule load_control_schedule(const std::string& path, AngleUnit unit,
                                      Interpolation mode = Interpolation::linear);

// Header `t,x_g,y_g,z_g` with an optional `beta` or `phi` column matching
// the constraint.
TrajectorySpec parse_trajectory_spec(std::string_view text, AngleUnit unit,
                                     Constraint constraint);
TrajectorySpec load_trajectory_spec(const std::string& path, AngleUnit unit,
                                    Constraint constraint);

std::vector<std::string> trajectory_columns(AngleUnit unit);
void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record, AngleUnit unit);

std::vector<std::string> inverse_columns(AngleUnit unit);
void write_inverse_csv(std::ostream& out, const InverseSolution& solution, AngleUnit unit);

// Columns h_m, rho_kg_m3, sigma, theta_K, P_Pa, a_m_s.
void write_atmosphere_table(std::ostream& out, double h_min, double h_max, double step);

std::string read_file(const std::string& path);

}  // namespace asymflight::io
