#pragma once

#include <Eigen/Core>

namespace asymflight {

inline constexpr double kDefaultVMin = 1.0;      // hover guard, m/s
inline constexpr double kGimbalGuard = 1e-6;     // min |cos(theta)|
inline constexpr double kSideslipGuard = 1e-6;   // min |cos(beta)|

struct EulerAngles {
  double phi = 0.0;    // roll
  double theta = 0.0;  // pitch
  double psi = 0.0;    // yaw (heading)
};

struct EulerRates {
  double phi_dot = 0.0;
  double theta_dot = 0.0;
  double psi_dot = 0.0;
};

struct BodyRates {
  double p = 0.0;
  double q = 0.0;
  double r = 0.0;
};

struct WindState {
  double V = 0.0;      // airspeed, m/s
  double alpha = 0.0;  // angle of attack
  double beta = 0.0;   // sideslip
};

struct FlightPathAngles {
  double theta_w = 0.0;  // elevation, [-pi/2, pi/2]
  double psi_w = 0.0;    // azimuth, [0, 2 pi)
};

struct GroundPosition {
  double x_g = 0.0;  // north, m
  double y_g = 0.0;  // east, m
  double z_g = 0.0;  // down, m
};

struct PathAngleResiduals {
  double r16 = 0.0;
  double r17 = 0.0;
};

double wrap_pi(double angle);      // (-pi, pi]
double wrap_two_pi(double angle);  // [0, 2 pi)

BodyRates body_rates_from_euler_rates(const EulerAngles& euler, const EulerRates& rates);

// Throws gimbal_singularity when |cos(theta)| < 1e-6.
EulerRates euler_rates_from_body_rates(const EulerAngles& euler, const BodyRates& rates);

Eigen::Vector3d body_velocity_from_wind(const WindState& wind);

// Throws hover_singularity below v_min, pure_sideslip when u = w = 0.
WindState wind_from_body_velocity(const Eigen::Vector3d& uvw, double v_min = kDefaultVMin);

// atan2(v, u); throws undefined_flank when u = 0.
double flank_angle(double u, double v);

// Maps body-axes components to local earth-axes components (yaw, pitch, roll order).
Eigen::Matrix3d body_to_earth_dcm(const EulerAngles& euler);

Eigen::Vector3d earth_velocity(const WindState& wind, const EulerAngles& euler);

// Throws hover_singularity when V < v_min.
FlightPathAngles flight_path_angles(const Eigen::Vector3d& earth_vel, double V,
                                    double v_min = kDefaultVMin);

double climb_rate(double V, const FlightPathAngles& fpa);

PathAngleResiduals path_angle_residuals(const WindState& wind, const EulerAngles& euler,
                                        const FlightPathAngles& fpa);

inline double altitude_from_position(double z_g, double h_ini) { return h_ini - z_g; }

}  // namespace asymflight
