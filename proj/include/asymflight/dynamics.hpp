#pragma once

#include <Eigen/Core>

#include "asymflight/aero.hpp"
#include "asymflight/airframe.hpp"
#include "asymflight/axes.hpp"

namespace asymflight {

inline constexpr double kMinAltitude = -500.0;  // m, lower bound during simulation

// The 12 integrated states.
struct FlightState {
  WindState wind;
  BodyRates rates;
  EulerAngles euler;
  GroundPosition position;

  using Vector = Eigen::Matrix<double, 12, 1>;
  // Order: V, beta, alpha, p, q, r, phi, theta, psi, x_g, y_g, z_g.
  Vector to_vector() const;
  static FlightState from_vector(const Vector& x);
};

struct StateDerivative {
  double V_dot = 0.0;
  double beta_dot = 0.0;
  double alpha_dot = 0.0;
  double p_dot = 0.0;
  double q_dot = 0.0;
  double r_dot = 0.0;
  double phi_dot = 0.0;
  double theta_dot = 0.0;
  double psi_dot = 0.0;
  double x_g_dot = 0.0;
  double y_g_dot = 0.0;
  double z_g_dot = 0.0;

  FlightState::Vector to_vector() const;
};

struct AuxiliaryMoments {
  double T1 = 0.0;
  double T2 = 0.0;
  double T3 = 0.0;
};

struct AngularAccelerations {
  double p_dot = 0.0;
  double q_dot = 0.0;
  double r_dot = 0.0;
};

struct WindAccelerations {
  double V_dot = 0.0;
  double beta_dot = 0.0;
  double alpha_dot = 0.0;
};

// derivation_consistent uses -T cos(alpha) sin(beta) in the sideslip
// equation, which is what the body-axes momentum balance yields.
// paper_literal keeps the printed +T cos(alpha) sin(beta).
enum class EquationMode { derivation_consistent, paper_literal };

// Algebraic quantities computed once per derivative evaluation.
struct DerivedOutputs {
  double h = 0.0;
  double rho = 0.0;
  AeroCoefficients coefficients;
  ForcesMoments loads;
  AuxiliaryMoments aux;
  FlightPathAngles path;
  double alpha_f = 0.0;
  double h_dot = 0.0;
};

struct DynamicsOptions {
  EquationMode mode = EquationMode::derivation_consistent;
  double v_min = kDefaultVMin;
  StallMonitor* stall_monitor = nullptr;
};

AuxiliaryMoments auxiliary_moments(const BodyRates& rates, const InertiaTensor& inertia,
                                   const Eigen::Vector3d& moments);

// Adjugate (Cramer) form of I * omega_dot = (T1, T2, T3). Throws
// singular_inertia when T0 <= 0.
AngularAccelerations angular_accelerations(double T0, const InertiaTensor& inertia,
                                           const AuxiliaryMoments& aux);

// Reduced form for airframes with an x_b-z_b symmetry plane (D = F = 0).
// Throws not_symmetric otherwise.
AngularAccelerations angular_accelerations_symmetric(const InertiaTensor& inertia,
                                                     const BodyRates& rates,
                                                     const Eigen::Vector3d& moments);

// Wind-axes translational equations. Throws hover_singularity or
// sideslip_singularity at the two singular configurations.
WindAccelerations linear_accelerations(const FlightState& state, const AirframeParams& params,
                                       double qbar, const BodyForceCoefficients& coeffs,
                                       const ControlInputs& controls,
                                       EquationMode mode = EquationMode::derivation_consistent,
                                       double v_min = kDefaultVMin);

// Body-axes momentum residuals, with (u_dot, v_dot, w_dot) rebuilt from the
// wind-axes rates. Zero for a consistent derivative.
Eigen::Vector3d body_axes_residual(const FlightState& state, const WindAccelerations& deriv,
                                   const ForcesMoments& loads, const ControlInputs& controls,
                                   double mass, double g0);

struct Evaluation {
  StateDerivative derivative;
  DerivedOutputs outputs;
};

// Full closure: altitude, density, dynamic pressure, coefficients, loads,
// auxiliary moments, angular and linear accelerations, Euler rates and
// ground velocity. Errors carry the name of the failing equation group.
Evaluation evaluate(const FlightState& state, const ControlInputs& controls,
                    const AirframeParams& params, const DynamicsOptions& options = {});

StateDerivative state_derivative(const FlightState& state, const ControlInputs& controls,
                                 const AirframeParams& params,
                                 const DynamicsOptions& options = {});

}  // namespace asymflight
