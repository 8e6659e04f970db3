#include "asymflight/atmosphere.hpp"

#include <cmath>
#include <string>

#include "asymflight/error.hpp"

namespace asymflight::atmosphere {

namespace {

void check_ceiling(double h) {
  if (!(h <= kCeiling)) {
    throw FlightError(ErrorCode::altitude_out_of_range,
                      "altitude " + std::to_string(h) + " m above the 20000 m ceiling");
  }
}

void check_non_negative(double h) {
  if (!(h >= 0.0)) {
    throw FlightError(ErrorCode::invalid_argument, "negative altitude");
  }
}

}  // namespace

double density(double h) {
  check_ceiling(h);
  if (h <= kH1) return kRho0 * std::pow(1.0 - kM0 * h, kN0);
  return kRho1 * std::exp(-kM1 * (h - kH1));
}

double temperature(double h) {
  check_ceiling(h);
  if (h <= kH1) return kTheta0 - kLapseRate * h;
  return kTheta1;
}

double pressure(double h) { return density(h) * kGasConstant * temperature(h); }

double speed_of_sound(double h) { return std::sqrt(kGamma * kGasConstant * temperature(h)); }

double density_ratio(double h) { return density(h) / kRho0; }

Sample sample(double h) {
  Sample s{};
  s.rho = density(h);
  s.theta = temperature(h);
  s.P = s.rho * kGasConstant * s.theta;
  s.a = std::sqrt(kGamma * kGasConstant * s.theta);
  s.sigma = s.rho / kRho0;
  return s;
}

double geopotential_altitude(double h) {
  check_non_negative(h);
  return kEarthRadius * h / (kEarthRadius + h);
}

double gravity_reduction_fraction(double h) {
  check_non_negative(h);
  const double ratio = kEarthRadius / (kEarthRadius + h);
  return 1.0 - ratio * ratio;
}

}  // namespace asymflight::atmosphere
