#include "asymflight/dynamics.hpp"

#include <cmath>

#include "asymflight/atmosphere.hpp"
#include "asymflight/error.hpp"

namespace asymflight {

using std::cos;
using std::sin;

FlightState::Vector FlightState::to_vector() const {
  Vector x;
  x << wind.V, wind.beta, wind.alpha, rates.p, rates.q, rates.r, euler.phi, euler.theta,
      euler.psi, position.x_g, position.y_g, position.z_g;
  return x;
}

FlightState FlightState::from_vector(const Vector& x) {
  FlightState s;
  s.wind = {x[0], x[2], x[1]};
  s.rates = {x[3], x[4], x[5]};
  s.euler = {x[6], x[7], x[8]};
  s.position = {x[9], x[10], x[11]};
  return s;
}

FlightState::Vector StateDerivative::to_vector() const {
  FlightState::Vector x;
  x << V_dot, beta_dot, alpha_dot, p_dot, q_dot, r_dot, phi_dot, theta_dot, psi_dot, x_g_dot,
      y_g_dot, z_g_dot;
  return x;
}

AuxiliaryMoments auxiliary_moments(const BodyRates& w, const InertiaTensor& in,
                                   const Eigen::Vector3d& M) {
  const double p = w.p, q = w.q, r = w.r;
  return {(in.B - in.C) * q * r + (in.E * q - in.F * r) * p + (q * q - r * r) * in.D + M.x(),
          (in.C - in.A) * r * p + (in.F * r - in.D * p) * q + (r * r - p * p) * in.E + M.y(),
          (in.A - in.B) * p * q + (in.D * p - in.E * q) * r + (p * p - q * q) * in.F + M.z()};
}

AngularAccelerations angular_accelerations(double T0, const InertiaTensor& in,
                                           const AuxiliaryMoments& t) {
  if (!(T0 > 0.0)) {
    throw FlightError(ErrorCode::singular_inertia, "inertia determinant is not positive");
  }
  const double A = in.A, B = in.B, C = in.C, D = in.D, E = in.E, F = in.F;
  return {((B * C - D * D) * t.T1 + (F * C + E * D) * t.T2 + (F * D + E * B) * t.T3) / T0,
          ((A * C - E * E) * t.T2 + (A * D + E * F) * t.T3 + (F * C + E * D) * t.T1) / T0,
          ((A * B - F * F) * t.T3 + (F * D + B * E) * t.T1 + (A * D + F * E) * t.T2) / T0};
}

AngularAccelerations angular_accelerations_symmetric(const InertiaTensor& in,
                                                     const BodyRates& w,
                                                     const Eigen::Vector3d& M) {
  if (in.D != 0.0 || in.F != 0.0) {
    throw FlightError(ErrorCode::not_symmetric, "reduced form needs D = F = 0");
  }
  const double A = in.A, B = in.B, C = in.C, E = in.E;
  const double p = w.p, q = w.q, r = w.r;
  const double gamma = A * C - E * E;
  return {((B * C - E * E - C * C) * q * r + (A - B + C) * E * p * q + C * M.x() + E * M.z()) /
              gamma,
          (E * r * r - E * p * p + (C - A) * p * r + M.y()) / B,
          ((A * A + E * E - A * B) * p * q + (B - A - C) * E * q * r + A * M.z() + E * M.x()) /
              gamma};
}

WindAccelerations linear_accelerations(const FlightState& s, const AirframeParams& params,
                                       double qbar, const BodyForceCoefficients& k,
                                       const ControlInputs& controls, EquationMode mode,
                                       double v_min) {
  const double V = s.wind.V;
  if (!(V >= v_min)) {
    throw FlightError(ErrorCode::hover_singularity, "airspeed below hover guard");
  }
  const double sb = sin(s.wind.beta), cb = cos(s.wind.beta);
  if (std::abs(cb) < kSideslipGuard) {
    throw FlightError(ErrorCode::sideslip_singularity, "sideslip at +/-90 deg");
  }
  const double sa = sin(s.wind.alpha), ca = cos(s.wind.alpha);
  const double sth = sin(s.euler.theta), cth = cos(s.euler.theta);
  const double sphi = sin(s.euler.phi), cphi = cos(s.euler.phi);
  const double p = s.rates.p, q = s.rates.q, r = s.rates.r;
  const double m = params.mass;
  const double mg = m * atmosphere::kG0;
  const double qs = qbar * params.S;
  const double T = controls.thrust;
  const double side_thrust_sign = mode == EquationMode::paper_literal ? 1.0 : -1.0;

  const double m_V_dot = qs * (k.C_x * ca * cb + k.C_y * sb + k.C_z * sa * cb) +
                         mg * (cth * sphi * sb - sth * ca * cb + cth * cphi * sa * cb) +
                         T * ca * cb;
  const double m_V_beta_dot = qs * (k.C_y * cb - k.C_x * ca * sb - k.C_z * sa * sb) +
                              mg * (cth * sphi * cb + sth * ca * sb - cth * cphi * sa * sb) +
                              side_thrust_sign * T * ca * sb + m * V * (-r * ca + p * sa);
  const double m_V_cb_alpha_dot = qs * (k.C_z * ca - k.C_x * sa) +
                                  mg * (sth * sa + cth * cphi * ca) - T * sa +
                                  m * V * (q * cb - r * sa * sb - p * ca * sb);
  return {m_V_dot / m, m_V_beta_dot / (m * V), m_V_cb_alpha_dot / (m * V * cb)};
}

Eigen::Vector3d body_axes_residual(const FlightState& s, const WindAccelerations& d,
                                   const ForcesMoments& loads, const ControlInputs& controls,
                                   double m, double g0) {
  const double V = s.wind.V;
  const double sa = sin(s.wind.alpha), ca = cos(s.wind.alpha);
  const double sb = sin(s.wind.beta), cb = cos(s.wind.beta);
  const double sth = sin(s.euler.theta), cth = cos(s.euler.theta);
  const double sphi = sin(s.euler.phi), cphi = cos(s.euler.phi);
  const double p = s.rates.p, q = s.rates.q, r = s.rates.r;

  const double u = V * ca * cb, v = V * sb, w = V * sa * cb;
  const double u_dot = d.V_dot * ca * cb - V * sa * cb * d.alpha_dot - V * ca * sb * d.beta_dot;
  const double v_dot = d.V_dot * sb + V * cb * d.beta_dot;
  const double w_dot = d.V_dot * sa * cb + V * ca * cb * d.alpha_dot - V * sa * sb * d.beta_dot;

  return {m * (u_dot - v * r + w * q) - loads.F_x + m * g0 * sth - controls.thrust,
          m * (v_dot - w * p + u * r) - loads.F_y - m * g0 * cth * sphi,
          m * (w_dot - u * q + v * p) - loads.F_z - m * g0 * cth * cphi};
}

Evaluation evaluate(const FlightState& s, const ControlInputs& controls,
                    const AirframeParams& params, const DynamicsOptions& opt) {
  Evaluation ev;
  DerivedOutputs& out = ev.outputs;
  StateDerivative& d = ev.derivative;
  const double V = s.wind.V;
  const double alpha = s.wind.alpha;
  const double beta = s.wind.beta;

  try {
    out.h = altitude_from_position(s.position.z_g, params.h_ini);
    if (out.h < kMinAltitude) {
      throw FlightError(ErrorCode::altitude_out_of_range, "altitude below -500 m");
    }
    out.rho = atmosphere::density(out.h);
  } catch (const FlightError& e) {
    rethrow_with_context(e, "altitude/density");
  }

  out.loads.qbar = dynamic_pressure(out.rho, V);

  AeroCoefficients& k = out.coefficients;
  try {
    k.wind = lift_drag_side(alpha, beta, params.force_constants, opt.stall_monitor);
    k.body = body_force_coefficients(k.wind, alpha, beta);
    k.moment = moment_coefficients(alpha, beta, s.rates, V, controls, params.derivatives,
                                   params.b, params.c, opt.v_min);
  } catch (const FlightError& e) {
    rethrow_with_context(e, "aerodynamic coefficients");
  }
  out.loads = forces_and_moments(out.loads.qbar, k.body, k.moment, params.S, params.b, params.c);

  try {
    const Eigen::Vector3d M(out.loads.M_x, out.loads.M_y, out.loads.M_z);
    out.aux = auxiliary_moments(s.rates, params.inertia, M);
    const auto omega_dot =
        angular_accelerations(inertia_determinant(params.inertia), params.inertia, out.aux);
    d.p_dot = omega_dot.p_dot;
    d.q_dot = omega_dot.q_dot;
    d.r_dot = omega_dot.r_dot;
  } catch (const FlightError& e) {
    rethrow_with_context(e, "angular momentum");
  }

  try {
    const auto lin =
        linear_accelerations(s, params, out.loads.qbar, k.body, controls, opt.mode, opt.v_min);
    d.V_dot = lin.V_dot;
    d.beta_dot = lin.beta_dot;
    d.alpha_dot = lin.alpha_dot;
  } catch (const FlightError& e) {
    rethrow_with_context(e, "linear momentum");
  }

  try {
    const auto euler_dot = euler_rates_from_body_rates(s.euler, s.rates);
    d.phi_dot = euler_dot.phi_dot;
    d.theta_dot = euler_dot.theta_dot;
    d.psi_dot = euler_dot.psi_dot;
  } catch (const FlightError& e) {
    rethrow_with_context(e, "angular velocity kinematics");
  }

  try {
    const Eigen::Vector3d ground = earth_velocity(s.wind, s.euler);
    d.x_g_dot = ground.x();
    d.y_g_dot = ground.y();
    d.z_g_dot = ground.z();
    out.path = flight_path_angles(ground, V, opt.v_min);
    out.h_dot = climb_rate(V, out.path);
    const Eigen::Vector3d uvw = body_velocity_from_wind(s.wind);
    out.alpha_f = flank_angle(uvw.x(), uvw.y());
  } catch (const FlightError& e) {
    rethrow_with_context(e, "trajectory kinematics");
  }
  return ev;
}

StateDerivative state_derivative(const FlightState& state, const ControlInputs& controls,
                                 const AirframeParams& params, const DynamicsOptions& options) {
  return evaluate(state, controls, params, options).derivative;
}

}  // namespace asymflight
