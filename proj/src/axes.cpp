#include "asymflight/axes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "asymflight/error.hpp"

namespace asymflight {

using std::cos;
using std::sin;

double wrap_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle, two_pi);
  if (wrapped <= -std::numbers::pi) wrapped += two_pi;
  if (wrapped > std::numbers::pi) wrapped -= two_pi;
  return wrapped;
}

double wrap_two_pi(double angle) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(angle, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  if (wrapped >= two_pi) wrapped -= two_pi;
  return wrapped;
}

BodyRates body_rates_from_euler_rates(const EulerAngles& e, const EulerRates& d) {
  const double sphi = sin(e.phi), cphi = cos(e.phi);
  const double sth = sin(e.theta), cth = cos(e.theta);
  return {d.phi_dot - sth * d.psi_dot,
          cphi * d.theta_dot + cth * sphi * d.psi_dot,
          cth * cphi * d.psi_dot - sphi * d.theta_dot};
}

EulerRates euler_rates_from_body_rates(const EulerAngles& e, const BodyRates& w) {
  const double cth = cos(e.theta);
  if (std::abs(cth) < kGimbalGuard) {
    throw FlightError(ErrorCode::gimbal_singularity, "pitch at +/-90 deg, Euler rates undefined");
  }
  const double sphi = sin(e.phi), cphi = cos(e.phi);
  const double sth = sin(e.theta);
  // q and r mix theta_dot and psi_dot through a rotation by phi.
  const double psi_dot = (sphi * w.q + cphi * w.r) / cth;
  const double theta_dot = cphi * w.q - sphi * w.r;
  const double phi_dot = w.p + sth * psi_dot;
  return {phi_dot, theta_dot, psi_dot};
}

Eigen::Vector3d body_velocity_from_wind(const WindState& w) {
  const double cb = cos(w.beta);
  return {w.V * cos(w.alpha) * cb, w.V * sin(w.beta), w.V * sin(w.alpha) * cb};
}

WindState wind_from_body_velocity(const Eigen::Vector3d& uvw, double v_min) {
  const double V = uvw.norm();
  if (!(V >= v_min)) {
    throw FlightError(ErrorCode::hover_singularity, "airspeed below hover guard");
  }
  if (uvw.x() == 0.0 && uvw.z() == 0.0) {
    throw FlightError(ErrorCode::pure_sideslip, "velocity purely along y_b");
  }
  return {V, std::atan2(uvw.z(), uvw.x()), std::asin(uvw.y() / V)};
}

double flank_angle(double u, double v) {
  if (u == 0.0) throw FlightError(ErrorCode::undefined_flank, "u = 0");
  return std::atan2(v, u);
}

Eigen::Matrix3d body_to_earth_dcm(const EulerAngles& e) {
  const double sphi = sin(e.phi), cphi = cos(e.phi);
  const double sth = sin(e.theta), cth = cos(e.theta);
  const double spsi = sin(e.psi), cpsi = cos(e.psi);
  Eigen::Matrix3d R;
  R << cth * cpsi, sphi * sth * cpsi - cphi * spsi, cphi * sth * cpsi + sphi * spsi,
       cth * spsi, sphi * sth * spsi + cphi * cpsi, cphi * sth * spsi - sphi * cpsi,
       -sth,       sphi * cth,                      cphi * cth;
  return R;
}

Eigen::Vector3d earth_velocity(const WindState& wind, const EulerAngles& euler) {
  return body_to_earth_dcm(euler) * body_velocity_from_wind(wind);
}

FlightPathAngles flight_path_angles(const Eigen::Vector3d& v, double V, double v_min) {
  if (!(V >= v_min)) {
    throw FlightError(ErrorCode::hover_singularity, "airspeed below hover guard");
  }
  const double s = std::clamp(-v.z() / V, -1.0, 1.0);
  return {std::asin(s), wrap_two_pi(std::atan2(v.y(), v.x()))};
}

double climb_rate(double V, const FlightPathAngles& fpa) { return V * sin(fpa.theta_w); }

PathAngleResiduals path_angle_residuals(const WindState& w, const EulerAngles& e,
                                        const FlightPathAngles& f) {
  const double sa = sin(w.alpha), ca = cos(w.alpha);
  const double sb = sin(w.beta), cb = cos(w.beta);
  const double sphi = sin(e.phi), cphi = cos(e.phi);
  const double sth = sin(e.theta), cth = cos(e.theta);
  const double r16 = cos(f.theta_w) * sin(f.psi_w - e.psi) - (cphi * sb - sphi * sa * cb);
  const double r17 = sin(f.theta_w) -
                     (sth * ca * cb - cth * sphi * sb - cth * cphi * sa * cb);
  return {r16, r17};
}

}  // namespace asymflight
