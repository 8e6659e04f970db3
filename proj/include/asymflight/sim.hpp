#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "asymflight/dynamics.hpp"

namespace asymflight {

enum class Interpolation { linear, zero_order_hold };

// Sampled control histories; t starts at 0 and is strictly increasing.
class ControlSchedule {
 public:
  ControlSchedule(std::vector<double> t, std::vector<ControlInputs> controls,
                  Interpolation mode = Interpolation::linear);

  static ControlSchedule constant(const ControlInputs& controls, double t_end);

  ControlInputs at(double t) const;
  double end_time() const { return t_.back(); }
  Interpolation mode() const { return mode_; }
  const std::vector<double>& times() const { return t_; }
  const std::vector<ControlInputs>& samples() const { return u_; }

 private:
  std::vector<double> t_;
  std::vector<ControlInputs> u_;
  Interpolation mode_;
};

struct SimulationConfig {
  double dt = 0.01;
  double t_end = 0.0;
  FlightState initial;
  EquationMode mode = EquationMode::derivation_consistent;
  double v_min = kDefaultVMin;
  std::size_t decimation = 1;
};

struct TrajectoryRow {
  double t = 0.0;
  FlightState state;
  DerivedOutputs outputs;
  ControlInputs controls;
};

struct Extremum {
  double min = 0.0;
  double max = 0.0;
};

struct TrajectoryExtrema {
  Extremum alpha;
  Extremum delta_l;
  Extremum delta_m;
  Extremum delta_n;
  Extremum thrust;
  double max_load_factor = 0.0;  // |F_z| / (m g0)
  std::size_t stall_warnings = 0;
};

struct TrajectoryRecord {
  std::vector<TrajectoryRow> rows;
  TrajectoryExtrema extrema;
  // Set when the run stopped early; rows hold everything up to the last
  // valid state.
  std::optional<std::string> failure;
  std::optional<int> failure_code;
  double failure_time = 0.0;
};

// One classical Runge-Kutta step; controls sampled at t, t + dt/2, t + dt.
// Roll and yaw are re-wrapped to (-pi, pi] after the step.
FlightState rk4_step(const FlightState& state, double t, const ControlSchedule& schedule,
                     const AirframeParams& params, double dt,
                     const DynamicsOptions& options = {});

std::size_t step_count(double t_end, double dt);

// Throws invalid_argument for bad configuration. Numerical failures during
// the run are reported through TrajectoryRecord::failure.
TrajectoryRecord simulate(const SimulationConfig& config, const ControlSchedule& schedule,
                          const AirframeParams& params);

enum class TrimMode {
  // Full force balance at theta = alpha: q S (C_L + C_D tan(alpha)) = m g0
  // and T cos(alpha) = q S C_D. Zero state derivative apart from x_g, y_g.
  exact,
  // Two-equation reduction T = q S C_D, m g0 = q S C_L.
  reduced,
};

struct TrimSolution {
  double alpha = 0.0;
  double delta_m = 0.0;
  double thrust = 0.0;
  double theta = 0.0;
  double qbar = 0.0;
  double C_L = 0.0;
  double C_D = 0.0;
  bool stall_warning = false;
};

TrimSolution trim_steady_level(double V, double h, const AirframeParams& params,
                               TrimMode mode = TrimMode::exact, double v_min = kDefaultVMin);

// Wings-level straight flight at the trim solution, heading psi.
FlightState trim_state(const TrimSolution& trim, double V, double h,
                       const AirframeParams& params, double psi = 0.0);

ControlInputs trim_controls(const TrimSolution& trim);

}  // namespace asymflight
