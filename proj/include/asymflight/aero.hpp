#pragma once

#include <cstddef>

#include "asymflight/airframe.hpp"
#include "asymflight/axes.hpp"

namespace asymflight {

inline constexpr double kDefaultDeflectionLimit = 0.5;  // rad

struct ControlInputs {
  double delta_l = 0.0;  // aileron, rad
  double delta_m = 0.0;  // elevator, rad
  double delta_n = 0.0;  // rudder, rad
  double thrust = 0.0;   // N, along x_b
};

// Wind-axes (lift, drag, side) coefficients.
struct WindForceCoefficients {
  double C_L = 0.0;
  double C_D = 0.0;
  double C_C = 0.0;
};

struct BodyForceCoefficients {
  double C_x = 0.0;
  double C_y = 0.0;
  double C_z = 0.0;
};

struct MomentCoefficients {
  double C_l = 0.0;
  double C_m = 0.0;
  double C_n = 0.0;
};

struct AeroCoefficients {
  WindForceCoefficients wind;
  BodyForceCoefficients body;
  MomentCoefficients moment;
};

struct ForcesMoments {
  double qbar = 0.0;
  double F_x = 0.0;
  double F_y = 0.0;
  double F_z = 0.0;
  double M_x = 0.0;
  double M_y = 0.0;
  double M_z = 0.0;
};

// Counts evaluations above the stall warning threshold. The linear lift
// model is still used past the threshold.
class StallMonitor {
 public:
  explicit StallMonitor(double alpha_warn = kDefaultAlphaWarn) : alpha_warn_(alpha_warn) {}

  void observe(double alpha);
  double threshold() const { return alpha_warn_; }
  std::size_t warnings() const { return warnings_; }
  double max_alpha() const { return max_alpha_; }

 private:
  double alpha_warn_;
  std::size_t warnings_ = 0;
  double max_alpha_ = -1e300;
};

double dynamic_pressure(double rho, double V);

WindForceCoefficients lift_drag_side(double alpha, double beta, const AeroForceConstants& fc,
                                     StallMonitor* monitor = nullptr);

BodyForceCoefficients body_force_coefficients(const WindForceCoefficients& wind, double alpha,
                                              double beta);

// Throws hover_singularity when V < v_min.
MomentCoefficients moment_coefficients(double alpha, double beta, const BodyRates& rates,
                                       double V, const ControlInputs& controls,
                                       const StabilityDerivatives& sd, double b, double c,
                                       double v_min = kDefaultVMin);

double elevator_from_pitch_coefficient(double C_m, double alpha, double q, double V,
                                       const StabilityDerivatives& sd, double c,
                                       double v_min = kDefaultVMin);

struct LateralDeflections {
  double delta_l = 0.0;
  double delta_n = 0.0;
};

LateralDeflections aileron_rudder_from_roll_yaw(double C_l, double C_n, double beta, double p,
                                                double r, double V,
                                                const StabilityDerivatives& sd, double b,
                                                double v_min = kDefaultVMin);

ForcesMoments forces_and_moments(double qbar, const BodyForceCoefficients& force,
                                 const MomentCoefficients& moment, double S, double b, double c);

}  // namespace asymflight
