#pragma once

// International Standard Atmosphere, troposphere and tropopause (0-20 km).
// Altitudes are geometric unless stated otherwise.

namespace asymflight::atmosphere {

inline constexpr double kRho0 = 1.225;         // kg/m^3
inline constexpr double kTheta0 = 288.15;      // K
inline constexpr double kLapseRate = 0.0065;   // K/m
inline constexpr double kGasConstant = 287.05; // J/(kg K)
inline constexpr double kG0 = 9.80665;         // m/s^2
inline constexpr double kM0 = 2.25577e-5;      // 1/m
inline constexpr double kN0 = 4.25593;
inline constexpr double kH1 = 11000.0;         // m
inline constexpr double kTheta1 = 216.65;      // K
inline constexpr double kRho1 = 0.36391;       // kg/m^3
inline constexpr double kM1 = 1.57690e-4;      // 1/m
inline constexpr double kGamma = 1.40;
inline constexpr double kEarthRadius = 6371000.0;  // m
inline constexpr double kCeiling = 20000.0;    // m

struct Sample {
  double rho;    // kg/m^3
  double theta;  // K
  double P;      // Pa
  double a;      // m/s
  double sigma;
};

// All of these throw FlightError(altitude_out_of_range) for h > 20000 m.
double density(double h);
double temperature(double h);
double pressure(double h);
double speed_of_sound(double h);
double density_ratio(double h);
Sample sample(double h);

// H = R_E h / (R_E + h); requires h >= 0.
double geopotential_altitude(double h);

// 1 - (R_E / (R_E + h))^2
double gravity_reduction_fraction(double h);

}  // namespace asymflight::atmosphere
