#pragma once

#include <Eigen/Core>

namespace asymflight {

// Mass moments (A, B, C) and products (D = I_yz, E = I_xz, F = I_xy) of
// inertia about the body axes, kg m^2.
struct InertiaTensor {
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double D = 0.0;
  double E = 0.0;
  double F = 0.0;

  // [[A, -F, -E], [-F, B, -D], [-E, -D, C]]
  Eigen::Matrix3d matrix() const;
};

struct AeroForceConstants {
  double C_L0 = 0.0;
  double C_L_alpha = 0.0;  // 1/rad
  double C_D0 = 0.0;
  double K_CD = 0.0;
  double C_C_beta = 0.0;  // 1/rad
};

// Rate derivatives multiply rates scaled by b/V (roll, yaw) or c/V (pitch).
struct StabilityDerivatives {
  double C_l_beta = 0.0;
  double C_l_p = 0.0;
  double C_l_r = 0.0;
  double C_l_delta_l = 0.0;
  double C_l_delta_n = 0.0;

  double C_m0 = 0.0;
  double C_m_alpha = 0.0;
  double C_m_q = 0.0;
  double C_m_delta_m = 0.0;

  double C_n_beta = 0.0;
  double C_n_p = 0.0;
  double C_n_r = 0.0;
  double C_n_delta_l = 0.0;
  double C_n_delta_n = 0.0;

  // C_l_delta_l * C_n_delta_n - C_l_delta_n * C_n_delta_l
  double control_determinant() const;
};

inline constexpr double kDefaultAlphaWarn = 0.26;
inline constexpr double kMaxAltitude = 20000.0;

struct AirframeParams {
  double mass = 0.0;  // kg
  double S = 0.0;     // wing planform area, m^2
  double c = 0.0;     // longitudinal reference length, m
  double b = 0.0;     // lateral reference length, m
  InertiaTensor inertia;
  AeroForceConstants force_constants;
  StabilityDerivatives derivatives;
  double h_ini = 0.0;  // take-off altitude, m
  double alpha_warn = kDefaultAlphaWarn;  // stall warning threshold, rad
};

// A*B*C - A*D^2 - B*E^2 - C*F^2 - 2*D*E*F
double inertia_determinant(const InertiaTensor& inertia);

// Throws FlightError(validation) naming the first violated invariant.
const AirframeParams& validate(const AirframeParams& params);

}  // namespace asymflight
