#include "asymflight/aero.hpp"

#include <algorithm>
#include <cmath>

#include "asymflight/error.hpp"

namespace asymflight {

using std::cos;
using std::sin;

namespace {

void check_airspeed(double V, double v_min) {
  if (!(V >= v_min)) {
    throw FlightError(ErrorCode::hover_singularity, "airspeed below hover guard");
  }
}

}  // namespace

void StallMonitor::observe(double alpha) {
  max_alpha_ = std::max(max_alpha_, alpha);
  if (alpha > alpha_warn_) ++warnings_;
}

double dynamic_pressure(double rho, double V) { return 0.5 * rho * V * V; }

WindForceCoefficients lift_drag_side(double alpha, double beta, const AeroForceConstants& fc,
                                     StallMonitor* monitor) {
  if (monitor != nullptr) monitor->observe(alpha);
  const double C_L = fc.C_L0 + fc.C_L_alpha * alpha;
  return {C_L, fc.C_D0 + fc.K_CD * C_L * C_L, fc.C_C_beta * beta};
}

BodyForceCoefficients body_force_coefficients(const WindForceCoefficients& w, double alpha,
                                              double beta) {
  const double sa = sin(alpha), ca = cos(alpha);
  const double sb = sin(beta), cb = cos(beta);
  return {-w.C_D * ca * cb - w.C_C * ca * sb + w.C_L * sa,
          -w.C_D * sb + w.C_C * cb,
          -w.C_D * sa * cb - w.C_C * sa * sb - w.C_L * ca};
}

MomentCoefficients moment_coefficients(double alpha, double beta, const BodyRates& w, double V,
                                       const ControlInputs& u, const StabilityDerivatives& sd,
                                       double b, double c, double v_min) {
  check_airspeed(V, v_min);
  const double pb = w.p * b / V;
  const double rb = w.r * b / V;
  const double qc = w.q * c / V;
  return {sd.C_l_beta * beta + sd.C_l_p * pb + sd.C_l_r * rb + sd.C_l_delta_l * u.delta_l +
              sd.C_l_delta_n * u.delta_n,
          sd.C_m0 + sd.C_m_alpha * alpha + sd.C_m_q * qc + sd.C_m_delta_m * u.delta_m,
          sd.C_n_beta * beta + sd.C_n_p * pb + sd.C_n_r * rb + sd.C_n_delta_l * u.delta_l +
              sd.C_n_delta_n * u.delta_n};
}

double elevator_from_pitch_coefficient(double C_m, double alpha, double q, double V,
                                       const StabilityDerivatives& sd, double c, double v_min) {
  if (sd.C_m_delta_m == 0.0) {
    throw FlightError(ErrorCode::singular_elevator, "C_m_delta_m = 0");
  }
  check_airspeed(V, v_min);
  return (C_m - sd.C_m0 - sd.C_m_alpha * alpha - sd.C_m_q * q * c / V) / sd.C_m_delta_m;
}

LateralDeflections aileron_rudder_from_roll_yaw(double C_l, double C_n, double beta, double p,
                                                double r, double V,
                                                const StabilityDerivatives& sd, double b,
                                                double v_min) {
  const double det = sd.control_determinant();
  if (det == 0.0) {
    throw FlightError(ErrorCode::singular_control_effectiveness,
                      "aileron/rudder effectiveness determinant is zero");
  }
  check_airspeed(V, v_min);
  const double roll_rest =
      C_l - sd.C_l_beta * beta - sd.C_l_p * p * b / V - sd.C_l_r * r * b / V;
  const double yaw_rest =
      C_n - sd.C_n_beta * beta - sd.C_n_p * p * b / V - sd.C_n_r * r * b / V;
  return {(sd.C_n_delta_n * roll_rest - sd.C_l_delta_n * yaw_rest) / det,
          (sd.C_l_delta_l * yaw_rest - sd.C_n_delta_l * roll_rest) / det};
}

ForcesMoments forces_and_moments(double qbar, const BodyForceCoefficients& f,
                                 const MomentCoefficients& m, double S, double b, double c) {
  const double qs = qbar * S;
  return {qbar, qs * f.C_x, qs * f.C_y, qs * f.C_z, qs * b * m.C_l, qs * c * m.C_m,
          qs * b * m.C_n};
}

}  // namespace asymflight
