#include "asymflight/sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "asymflight/atmosphere.hpp"
#include "asymflight/error.hpp"

namespace asymflight {

ControlSchedule::ControlSchedule(std::vector<double> t, std::vector<ControlInputs> controls,
                                 Interpolation mode)
    : t_(std::move(t)), u_(std::move(controls)), mode_(mode) {
  if (t_.empty() || t_.size() != u_.size()) {
    throw FlightError(ErrorCode::invalid_argument, "control schedule needs matching samples");
  }
  if (t_.front() != 0.0) {
    throw FlightError(ErrorCode::invalid_argument, "control schedule must start at t = 0");
  }
  for (std::size_t i = 1; i < t_.size(); ++i) {
    if (!(t_[i] > t_[i - 1])) {
      throw FlightError(ErrorCode::invalid_argument,
                        "control schedule times must be strictly increasing");
    }
  }
  for (const auto& u : u_) {
    if (!(u.thrust >= 0.0)) {
      throw FlightError(ErrorCode::invalid_argument, "negative thrust in control schedule");
    }
  }
}

ControlSchedule ControlSchedule::constant(const ControlInputs& controls, double t_end) {
  if (!(t_end > 0.0)) return ControlSchedule({0.0}, {controls});
  return ControlSchedule({0.0, t_end}, {controls, controls});
}

ControlInputs ControlSchedule::at(double t) const {
  if (t <= t_.front()) return u_.front();
  if (t >= t_.back()) return u_.back();
  const auto it = std::upper_bound(t_.begin(), t_.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - t_.begin());
  const std::size_t lo = hi - 1;
  if (mode_ == Interpolation::zero_order_hold) return u_[lo];
  const double w = (t - t_[lo]) / (t_[hi] - t_[lo]);
  const auto lerp = [w](double a, double b) { return a + w * (b - a); };
  const ControlInputs& a = u_[lo];
  const ControlInputs& b = u_[hi];
  return {lerp(a.delta_l, b.delta_l), lerp(a.delta_m, b.delta_m), lerp(a.delta_n, b.delta_n),
          lerp(a.thrust, b.thrust)};
}

FlightState rk4_step(const FlightState& state, double t, const ControlSchedule& schedule,
                     const AirframeParams& params, double dt, const DynamicsOptions& options) {
  using Vec = FlightState::Vector;
  const auto f = [&](const Vec& x, double time) {
    return state_derivative(FlightState::from_vector(x), schedule.at(time), params, options)
        .to_vector();
  };
  const Vec x0 = state.to_vector();
  const Vec k1 = f(x0, t);
  const Vec k2 = f(x0 + 0.5 * dt * k1, t + 0.5 * dt);
  const Vec k3 = f(x0 + 0.5 * dt * k2, t + 0.5 * dt);
  const Vec k4 = f(x0 + dt * k3, t + dt);
  FlightState next = FlightState::from_vector(x0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
  next.euler.phi = wrap_pi(next.euler.phi);
  next.euler.psi = wrap_pi(next.euler.psi);
  return next;
}

std::size_t step_count(double t_end, double dt) {
  return static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
}

namespace {

void widen(Extremum& e, double v, bool first) {
  if (first) {
    e.min = e.max = v;
  } else {
    e.min = std::min(e.min, v);
    e.max = std::max(e.max, v);
  }
}

void accumulate(TrajectoryExtrema& ex, const TrajectoryRow& row, double weight, bool first) {
  widen(ex.alpha, row.state.wind.alpha, first);
  widen(ex.delta_l, row.controls.delta_l, first);
  widen(ex.delta_m, row.controls.delta_m, first);
  widen(ex.delta_n, row.controls.delta_n, first);
  widen(ex.thrust, row.controls.thrust, first);
  ex.max_load_factor = std::max(first ? 0.0 : ex.max_load_factor,
                                std::abs(row.outputs.loads.F_z) / weight);
}

TrajectoryRow make_row(double t, const FlightState& s, const ControlSchedule& schedule,
                       const AirframeParams& params, const DynamicsOptions& options) {
  TrajectoryRow row;
  row.t = t;
  row.state = s;
  row.controls = schedule.at(t);
  row.outputs = evaluate(s, row.controls, params, options).outputs;
  return row;
}

}  // namespace

TrajectoryRecord simulate(const SimulationConfig& cfg, const ControlSchedule& schedule,
                          const AirframeParams& params) {
  if (!(cfg.dt > 0.0)) throw FlightError(ErrorCode::invalid_argument, "dt must be positive");
  if (!(cfg.t_end >= cfg.dt)) {
    throw FlightError(ErrorCode::invalid_argument, "t_end must be at least dt");
  }
  if (cfg.decimation == 0) throw FlightError(ErrorCode::invalid_argument, "zero decimation");
  if (schedule.end_time() + 1e-9 < cfg.t_end) {
    throw FlightError(ErrorCode::invalid_argument, "control schedule ends before t_end");
  }
  validate(params);

  StallMonitor monitor(params.alpha_warn);
  DynamicsOptions options{cfg.mode, cfg.v_min, nullptr};
  DynamicsOptions recording{cfg.mode, cfg.v_min, &monitor};
  const double weight = params.mass * atmosphere::kG0;

  TrajectoryRecord record;
  const std::size_t steps = step_count(cfg.t_end, cfg.dt);
  record.rows.reserve(steps / cfg.decimation + 1);

  FlightState state = cfg.initial;
  std::size_t k = 0;
  try {
    record.rows.push_back(make_row(0.0, state, schedule, params, recording));
    accumulate(record.extrema, record.rows.back(), weight, true);
    for (k = 0; k < steps; ++k) {
      const double t = static_cast<double>(k) * cfg.dt;
      state = rk4_step(state, t, schedule, params, cfg.dt, options);
      if ((k + 1) % cfg.decimation == 0) {
        record.rows.push_back(
            make_row(static_cast<double>(k + 1) * cfg.dt, state, schedule, params, recording));
        accumulate(record.extrema, record.rows.back(), weight, false);
      }
    }
  } catch (const FlightError& e) {
    const double t = static_cast<double>(k) * cfg.dt;
    record.failure = "step " + std::to_string(k) + ", t = " + std::to_string(t) + " s: " + e.what();
    record.failure_code = static_cast<int>(e.code());
    record.failure_time = t;
  }
  record.extrema.stall_warnings = monitor.warnings();
  return record;
}

TrimSolution trim_steady_level(double V, double h, const AirframeParams& params, TrimMode mode,
                               double v_min) {
  if (!(V >= v_min)) throw FlightError(ErrorCode::hover_singularity, "trim airspeed too low");
  const auto& fc = params.force_constants;
  if (fc.C_L_alpha == 0.0) throw FlightError(ErrorCode::unattainable_trim, "zero lift slope");

  TrimSolution sol;
  sol.qbar = dynamic_pressure(atmosphere::density(h), V);
  const double qs = sol.qbar * params.S;
  const double weight = params.mass * atmosphere::kG0;
  const double cl_reduced = weight / qs;
  double alpha = (cl_reduced - fc.C_L0) / fc.C_L_alpha;

  if (mode == TrimMode::exact) {
    // Newton on g(alpha) = C_L + C_D tan(alpha) - W / (q S).
    bool converged = false;
    for (int it = 0; it < 50 && std::abs(alpha) < 0.25 * std::numbers::pi; ++it) {
      const double cl = fc.C_L0 + fc.C_L_alpha * alpha;
      const double cd = fc.C_D0 + fc.K_CD * cl * cl;
      const double ta = std::tan(alpha);
      const double g = cl + cd * ta - cl_reduced;
      const double sec2 = 1.0 + ta * ta;
      const double dg = fc.C_L_alpha + 2.0 * fc.K_CD * cl * fc.C_L_alpha * ta + cd * sec2;
      if (dg == 0.0) break;
      const double step = g / dg;
      alpha -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(alpha))) {
        converged = true;
        break;
      }
    }
    if (!converged || !(std::abs(alpha) < 0.25 * std::numbers::pi)) {
      throw FlightError(ErrorCode::unattainable_trim,
                        "no level-flight balance within |alpha| < 45 deg");
    }
  } else if (!(std::abs(alpha) < 0.5 * std::numbers::pi)) {
    throw FlightError(ErrorCode::unattainable_trim, "dynamic pressure too low for the weight");
  }

  sol.alpha = alpha;
  sol.theta = alpha;
  sol.C_L = fc.C_L0 + fc.C_L_alpha * alpha;
  sol.C_D = fc.C_D0 + fc.K_CD * sol.C_L * sol.C_L;
  sol.thrust = mode == TrimMode::exact ? qs * sol.C_D / std::cos(alpha) : qs * sol.C_D;
  sol.delta_m = elevator_from_pitch_coefficient(0.0, alpha, 0.0, V, params.derivatives,
                                                params.c, v_min);
  sol.stall_warning = alpha > params.alpha_warn;
  return sol;
}

FlightState trim_state(const TrimSolution& trim, double V, double h,
                       const AirframeParams& params, double psi) {
  FlightState s;
  s.wind = {V, trim.alpha, 0.0};
  s.euler = {0.0, trim.theta, psi};
  s.position.z_g = params.h_ini - h;
  return s;
}

ControlInputs trim_controls(const TrimSolution& trim) {
  return {0.0, trim.delta_m, 0.0, trim.thrust};
}

}  // namespace asymflight
