#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "asymflight/dynamics.hpp"

namespace asymflight {

// The variable imposed alongside the three trajectory coordinates.
enum class Constraint { sideslip, bank };

struct TrajectorySpec {
  std::vector<double> t;
  std::vector<double> x_g;
  std::vector<double> y_g;
  std::vector<double> z_g;
  Constraint constraint = Constraint::sideslip;
  // beta(t) or phi(t) per sample; empty means identically zero.
  std::vector<double> constraint_values;
};

// Second-order central differences inside, second-order one-sided at the
// ends. Throws non_uniform_sampling / too_few_samples.
struct PathDerivatives {
  double dt = 0.0;
  std::vector<Eigen::Vector3d> velocity;
  std::vector<Eigen::Vector3d> acceleration;
};

PathDerivatives differentiate_trajectory(const TrajectorySpec& spec);

// Same stencils on a scalar series with uniform spacing h.
std::vector<double> first_derivative(const std::vector<double>& x, double h);
std::vector<double> second_derivative(const std::vector<double>& x, double h);

struct KinematicTargets {
  double t = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  Eigen::Vector3d velocity = Eigen::Vector3d::Zero();
  Eigen::Vector3d acceleration = Eigen::Vector3d::Zero();
  double V = 0.0;
  double V_dot = 0.0;
  FlightPathAngles path;
  double h_dot = 0.0;
  double constraint = 0.0;
};

// Throws hover_singularity when the path speed drops below v_min.
KinematicTargets kinematic_inversion(double t, const Eigen::Vector3d& position,
                                     const Eigen::Vector3d& velocity,
                                     const Eigen::Vector3d& acceleration, double constraint,
                                     double v_min = kDefaultVMin);

struct InverseOptions {
  double tol = 1e-8;  // on the scaled residual (accelerations in g0)
  int max_iter = 50;
  int max_halvings = 10;
  EquationMode mode = EquationMode::derivation_consistent;
  double v_min = kDefaultVMin;
  double deflection_limit = kDefaultDeflectionLimit;
  // Largest |alpha| accepted as a solution of the linear lift model.
  double alpha_limit = 0.7853981633974483;
};

// Unknowns of the per-sample algebraic system. Exactly one of beta / phi is
// imposed by the constraint; the other is solved for.
struct AttitudeSolution {
  double alpha = 0.0;
  double beta = 0.0;
  double phi = 0.0;
  double theta = 0.0;
  double psi = 0.0;  // unwrapped
  double thrust = 0.0;
  double residual_norm = 0.0;
  int iterations = 0;
};

// Residuals: the inertial acceleration implied by the wind-axes momentum
// equations minus the path acceleration (in g0), then the two flight-path /
// attitude identities. Unknown vector: alpha, beta-or-phi, theta, psi,
// thrust / (m g0).
Eigen::VectorXd inverse_residual(const Eigen::VectorXd& unknowns, const KinematicTargets& target,
                                 Constraint constraint, const AirframeParams& params,
                                 const InverseOptions& options);

// Central-difference Jacobian of inverse_residual with step `step`.
Eigen::MatrixXd inverse_jacobian(const Eigen::VectorXd& unknowns, const KinematicTargets& target,
                                 Constraint constraint, const AirframeParams& params,
                                 const InverseOptions& options, double step = 1e-6);

Eigen::VectorXd pack_unknowns(const AttitudeSolution& s, Constraint constraint,
                              const AirframeParams& params);

// Damped Newton from `previous`. Throws no_convergence / singular_jacobian.
AttitudeSolution inverse_step(const AttitudeSolution& previous, const KinematicTargets& target,
                              Constraint constraint, const AirframeParams& params,
                              const InverseOptions& options);

struct SaturationFlags {
  bool delta_l = false;
  bool delta_m = false;
  bool delta_n = false;
  bool negative_thrust = false;
  bool stall = false;

  bool any() const { return delta_l || delta_m || delta_n || negative_thrust || stall; }
};

struct InverseStep {
  double t = 0.0;
  ControlInputs controls;
  FlightState state;  // psi wrapped to (-pi, pi]
  MomentCoefficients required;
  double residual_norm = 0.0;
  int iterations = 0;
  // Body-axes momentum residual of the reconstructed state with
  // finite-difference wind-axes rates, in units of m g0.
  double consistency = 0.0;
  SaturationFlags flags;
};

struct InverseSolution {
  std::vector<InverseStep> steps;
};

// Throws with the failing sample index and time.
InverseSolution inverse_simulate(const TrajectorySpec& spec, const AirframeParams& params,
                                 const InverseOptions& options = {});

}  // namespace asymflight
