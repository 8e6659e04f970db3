#include "asymflight/inverse.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/LU>

#include "asymflight/atmosphere.hpp"
#include "asymflight/error.hpp"
#include "asymflight/sim.hpp"

namespace asymflight {

namespace {

constexpr std::size_t kMinSamples = 5;

double uniform_spacing(const std::vector<double>& t) {
  if (t.size() < kMinSamples) {
    throw FlightError(ErrorCode::too_few_samples, "trajectory needs at least 5 samples");
  }
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  if (!(dt > 0.0)) {
    throw FlightError(ErrorCode::non_uniform_sampling, "times must be strictly increasing");
  }
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6 * dt) {
      throw FlightError(ErrorCode::non_uniform_sampling,
                        "sample spacing differs at index " + std::to_string(i));
    }
  }
  return dt;
}

}  // namespace

std::vector<double> first_derivative(const std::vector<double>& x, double h) {
  const std::size_t n = x.size();
  if (n < 3) throw FlightError(ErrorCode::too_few_samples, "need at least 3 samples");
  std::vector<double> d(n);
  d[0] = (-3.0 * x[0] + 4.0 * x[1] - x[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (x[i + 1] - x[i - 1]) / (2.0 * h);
  d[n - 1] = (3.0 * x[n - 1] - 4.0 * x[n - 2] + x[n - 3]) / (2.0 * h);
  return d;
}

std::vector<double> second_derivative(const std::vector<double>& x, double h) {
  const std::size_t n = x.size();
  if (n < 4) throw FlightError(ErrorCode::too_few_samples, "need at least 4 samples");
  const double h2 = h * h;
  std::vector<double> d(n);
  d[0] = (2.0 * x[0] - 5.0 * x[1] + 4.0 * x[2] - x[3]) / h2;
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (x[i + 1] - 2.0 * x[i] + x[i - 1]) / h2;
  d[n - 1] = (2.0 * x[n - 1] - 5.0 * x[n - 2] + 4.0 * x[n - 3] - x[n - 4]) / h2;
  return d;
}

PathDerivatives differentiate_trajectory(const TrajectorySpec& spec) {
  const std::size_t n = spec.t.size();
  if (spec.x_g.size() != n || spec.y_g.size() != n || spec.z_g.size() != n) {
    throw FlightError(ErrorCode::invalid_argument, "trajectory columns differ in length");
  }
  PathDerivatives out;
  out.dt = uniform_spacing(spec.t);
  const std::vector<double>* axes[] = {&spec.x_g, &spec.y_g, &spec.z_g};
  out.velocity.assign(n, Eigen::Vector3d::Zero());
  out.acceleration.assign(n, Eigen::Vector3d::Zero());
  for (int k = 0; k < 3; ++k) {
    const auto v = first_derivative(*axes[k], out.dt);
    const auto a = second_derivative(*axes[k], out.dt);
    for (std::size_t i = 0; i < n; ++i) {
      out.velocity[i][k] = v[i];
      out.acceleration[i][k] = a[i];
    }
  }
  return out;
}

KinematicTargets kinematic_inversion(double t, const Eigen::Vector3d& position,
                                     const Eigen::Vector3d& velocity,
                                     const Eigen::Vector3d& acceleration, double constraint,
                                     double v_min) {
  KinematicTargets k;
  k.t = t;
  k.position = position;
  k.velocity = velocity;
  k.acceleration = acceleration;
  k.V = velocity.norm();
  k.path = flight_path_angles(velocity, k.V, v_min);
  k.V_dot = velocity.dot(acceleration) / k.V;
  k.h_dot = climb_rate(k.V, k.path);
  k.constraint = constraint;
  return k;
}

namespace {

struct Unpacked {
  FlightState state;
  double thrust = 0.0;
};

Unpacked unpack(const Eigen::VectorXd& z, const KinematicTargets& target, Constraint constraint,
                const AirframeParams& params) {
  Unpacked u;
  u.state.wind.V = target.V;
  u.state.wind.alpha = z[0];
  if (constraint == Constraint::sideslip) {
    u.state.wind.beta = target.constraint;
    u.state.euler.phi = z[1];
  } else {
    u.state.euler.phi = target.constraint;
    u.state.wind.beta = z[1];
  }
  u.state.euler.theta = z[2];
  u.state.euler.psi = z[3];
  u.state.position = {target.position.x(), target.position.y(), target.position.z()};
  u.thrust = z[4] * params.mass * atmosphere::kG0;
  return u;
}

double max_abs(const Eigen::VectorXd& r) { return r.cwiseAbs().maxCoeff(); }

double residual_norm_or_inf(const Eigen::VectorXd& z, const KinematicTargets& target,
                            Constraint constraint, const AirframeParams& params,
                            const InverseOptions& options, Eigen::VectorXd& r) {
  try {
    r = inverse_residual(z, target, constraint, params, options);
  } catch (const FlightError&) {
    return std::numeric_limits<double>::infinity();
  }
  const double n = max_abs(r);
  return std::isfinite(n) ? n : std::numeric_limits<double>::infinity();
}

}  // namespace

Eigen::VectorXd pack_unknowns(const AttitudeSolution& s, Constraint constraint,
                              const AirframeParams& params) {
  Eigen::VectorXd z(5);
  z << s.alpha, constraint == Constraint::sideslip ? s.phi : s.beta, s.theta, s.psi,
      s.thrust / (params.mass * atmosphere::kG0);
  return z;
}

Eigen::VectorXd inverse_residual(const Eigen::VectorXd& z, const KinematicTargets& target,
                                 Constraint constraint, const AirframeParams& params,
                                 const InverseOptions& options) {
  const Unpacked u = unpack(z, target, constraint, params);
  const FlightState& s = u.state;
  const double h = altitude_from_position(s.position.z_g, params.h_ini);
  const double qbar = dynamic_pressure(atmosphere::density(h), s.wind.V);
  const auto wind = lift_drag_side(s.wind.alpha, s.wind.beta, params.force_constants);
  const auto body = body_force_coefficients(wind, s.wind.alpha, s.wind.beta);
  const ControlInputs thrust_only{0.0, 0.0, 0.0, u.thrust};
  // Rates are left at zero: the inertial acceleration rebuilt below does not
  // depend on them.
  const auto d = linear_accelerations(s, params, qbar, body, thrust_only, options.mode,
                                      options.v_min);

  const double V = s.wind.V;
  const double sa = std::sin(s.wind.alpha), ca = std::cos(s.wind.alpha);
  const double sb = std::sin(s.wind.beta), cb = std::cos(s.wind.beta);
  const Eigen::Vector3d body_accel(
      d.V_dot * ca * cb - V * sa * cb * d.alpha_dot - V * ca * sb * d.beta_dot,
      d.V_dot * sb + V * cb * d.beta_dot,
      d.V_dot * sa * cb + V * ca * cb * d.alpha_dot - V * sa * sb * d.beta_dot);
  const Eigen::Vector3d earth_accel = body_to_earth_dcm(s.euler) * body_accel;

  const auto path = path_angle_residuals(s.wind, s.euler, target.path);
  Eigen::VectorXd r(5);
  r.head<3>() = (earth_accel - target.acceleration) / atmosphere::kG0;
  r[3] = path.r16;
  r[4] = path.r17;
  return r;
}

Eigen::MatrixXd inverse_jacobian(const Eigen::VectorXd& z, const KinematicTargets& target,
                                 Constraint constraint, const AirframeParams& params,
                                 const InverseOptions& options, double step) {
  const Eigen::Index n = z.size();
  Eigen::MatrixXd J(5, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd zp = z, zm = z;
    zp[j] += step;
    zm[j] -= step;
    J.col(j) = (inverse_residual(zp, target, constraint, params, options) -
                inverse_residual(zm, target, constraint, params, options)) /
               (2.0 * step);
  }
  return J;
}

AttitudeSolution inverse_step(const AttitudeSolution& previous, const KinematicTargets& target,
                              Constraint constraint, const AirframeParams& params,
                              const InverseOptions& options) {
  Eigen::VectorXd z = pack_unknowns(previous, constraint, params);
  Eigen::VectorXd r;
  double norm = residual_norm_or_inf(z, target, constraint, params, options, r);
  if (!std::isfinite(norm)) {
    // Let the underlying error surface.
    inverse_residual(z, target, constraint, params, options);
    throw FlightError(ErrorCode::no_convergence, "non-finite residual at the initial guess");
  }

  const auto newton_update = [&](bool polish) {
    const Eigen::MatrixXd J = inverse_jacobian(z, target, constraint, params, options);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(J);
    if (!lu.isInvertible()) {
      throw FlightError(ErrorCode::singular_jacobian, "inverse Jacobian is singular");
    }
    const Eigen::VectorXd dz = lu.solve(-r);
    double lambda = 1.0;
    for (int k = 0; k <= options.max_halvings; ++k, lambda *= 0.5) {
      const Eigen::VectorXd trial = z + lambda * dz;
      Eigen::VectorXd trial_r;
      const double trial_norm =
          residual_norm_or_inf(trial, target, constraint, params, options, trial_r);
      if (trial_norm < norm) {
        z = trial;
        r = trial_r;
        norm = trial_norm;
        return true;
      }
      if (polish) break;
    }
    return false;
  };

  int it = 0;
  for (; it < options.max_iter && norm > options.tol; ++it) {
    if (!newton_update(false)) break;
  }
  if (!(norm <= options.tol)) {
    throw FlightError(ErrorCode::no_convergence,
                      "residual " + std::to_string(norm) + " after " + std::to_string(it) +
                          " iterations");
  }
  if (norm > 0.0) newton_update(true);

  AttitudeSolution s;
  const Unpacked u = unpack(z, target, constraint, params);
  s.alpha = u.state.wind.alpha;
  s.beta = u.state.wind.beta;
  s.phi = u.state.euler.phi;
  s.theta = u.state.euler.theta;
  s.psi = u.state.euler.psi;
  s.thrust = u.thrust;
  s.residual_norm = norm;
  s.iterations = it;

  if (!(std::abs(s.alpha) <= options.alpha_limit)) {
    throw FlightError(ErrorCode::no_convergence,
                      "required angle of attack " + std::to_string(s.alpha) +
                          " rad is outside the linear lift range");
  }
  if (!(std::abs(std::cos(s.beta)) >= kSideslipGuard) ||
      !(std::abs(std::cos(s.theta)) >= kGimbalGuard)) {
    throw FlightError(ErrorCode::no_convergence, "solution reached a singular attitude");
  }
  return s;
}

namespace {

AttitudeSolution initial_guess(const KinematicTargets& k, Constraint constraint,
                               const AirframeParams& params, const InverseOptions& options) {
  AttitudeSolution s;
  const double h = altitude_from_position(k.position.z(), params.h_ini);
  try {
    const auto trim = trim_steady_level(k.V, h, params, TrimMode::exact, options.v_min);
    s.alpha = trim.alpha;
    s.thrust = trim.thrust;
  } catch (const FlightError&) {
    s.alpha = 0.1;
    s.thrust = 0.1 * params.mass * atmosphere::kG0;
  }
  s.theta = k.path.theta_w + s.alpha;
  s.psi = wrap_pi(k.path.psi_w);
  if (constraint == Constraint::sideslip) {
    s.beta = k.constraint;
  } else {
    s.phi = k.constraint;
  }
  return s;
}

double unwrap_near(double angle, double reference) {
  return reference + wrap_pi(angle - reference);
}

}  // namespace

InverseSolution inverse_simulate(const TrajectorySpec& spec, const AirframeParams& params,
                                 const InverseOptions& options) {
  validate(params);
  const PathDerivatives deriv = differentiate_trajectory(spec);
  const std::size_t n = spec.t.size();
  if (!spec.constraint_values.empty() && spec.constraint_values.size() != n) {
    throw FlightError(ErrorCode::invalid_argument, "constraint series length mismatch");
  }
  const double dt = deriv.dt;

  std::vector<KinematicTargets> targets(n);
  std::vector<AttitudeSolution> attitude(n);
  std::size_t i = 0;
  try {
    for (i = 0; i < n; ++i) {
      const double c = spec.constraint_values.empty() ? 0.0 : spec.constraint_values[i];
      targets[i] = kinematic_inversion(spec.t[i],
                                       Eigen::Vector3d(spec.x_g[i], spec.y_g[i], spec.z_g[i]),
                                       deriv.velocity[i], deriv.acceleration[i], c,
                                       options.v_min);
      AttitudeSolution guess =
          i == 0 ? initial_guess(targets[0], spec.constraint, params, options) : attitude[i - 1];
      if (spec.constraint == Constraint::sideslip) {
        guess.beta = c;
      } else {
        guess.phi = c;
      }
      attitude[i] = inverse_step(guess, targets[i], spec.constraint, params, options);
      if (i > 0) {
        attitude[i].psi = unwrap_near(attitude[i].psi, attitude[i - 1].psi);
        attitude[i].phi = unwrap_near(attitude[i].phi, attitude[i - 1].phi);
      }
    }
  } catch (const FlightError& e) {
    rethrow_with_context(e, "sample " + std::to_string(i) + " (t = " +
                                std::to_string(spec.t[i]) + " s)");
  }

  // Attitude rates and body rates from finite differences of the Euler angles.
  std::vector<double> phi(n), theta(n), psi(n), alpha(n), beta(n);
  for (std::size_t k = 0; k < n; ++k) {
    phi[k] = attitude[k].phi;
    theta[k] = attitude[k].theta;
    psi[k] = attitude[k].psi;
    alpha[k] = attitude[k].alpha;
    beta[k] = attitude[k].beta;
  }
  const auto phi_dot = first_derivative(phi, dt);
  const auto theta_dot = first_derivative(theta, dt);
  const auto psi_dot = first_derivative(psi, dt);
  const auto alpha_dot = first_derivative(alpha, dt);
  const auto beta_dot = first_derivative(beta, dt);

  std::vector<double> p(n), q(n), r(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto w = body_rates_from_euler_rates({phi[k], theta[k], psi[k]},
                                               {phi_dot[k], theta_dot[k], psi_dot[k]});
    p[k] = w.p;
    q[k] = w.q;
    r[k] = w.r;
  }
  const auto p_dot = first_derivative(p, dt);
  const auto q_dot = first_derivative(q, dt);
  const auto r_dot = first_derivative(r, dt);

  const Eigen::Matrix3d inertia = params.inertia.matrix();
  const auto& sd = params.derivatives;
  const double weight = params.mass * atmosphere::kG0;

  InverseSolution out;
  out.steps.resize(n);
  try {
    for (i = 0; i < n; ++i) {
      InverseStep& step = out.steps[i];
      const AttitudeSolution& a = attitude[i];
      const KinematicTargets& k = targets[i];
      step.t = spec.t[i];
      step.state.wind = {k.V, a.alpha, a.beta};
      step.state.rates = {p[i], q[i], r[i]};
      step.state.euler = {wrap_pi(a.phi), a.theta, wrap_pi(a.psi)};
      step.state.position = {k.position.x(), k.position.y(), k.position.z()};
      step.residual_norm = a.residual_norm;
      step.iterations = a.iterations;

      // Moments from I omega_dot = T and the auxiliary-moment relations.
      const Eigen::Vector3d T = inertia * Eigen::Vector3d(p_dot[i], q_dot[i], r_dot[i]);
      const auto gyro = auxiliary_moments(step.state.rates, params.inertia, Eigen::Vector3d::Zero());
      const Eigen::Vector3d M(T.x() - gyro.T1, T.y() - gyro.T2, T.z() - gyro.T3);

      const double h = altitude_from_position(k.position.z(), params.h_ini);
      const double qbar = dynamic_pressure(atmosphere::density(h), k.V);
      const double qs = qbar * params.S;
      step.required = {M.x() / (qs * params.b), M.y() / (qs * params.c), M.z() / (qs * params.b)};

      const auto lateral = aileron_rudder_from_roll_yaw(step.required.C_l, step.required.C_n,
                                                        a.beta, p[i], r[i], k.V, sd, params.b,
                                                        options.v_min);
      step.controls.delta_l = lateral.delta_l;
      step.controls.delta_n = lateral.delta_n;
      step.controls.delta_m = elevator_from_pitch_coefficient(step.required.C_m, a.alpha, q[i],
                                                              k.V, sd, params.c, options.v_min);
      step.controls.thrust = a.thrust;

      step.flags.delta_l = std::abs(step.controls.delta_l) > options.deflection_limit;
      step.flags.delta_m = std::abs(step.controls.delta_m) > options.deflection_limit;
      step.flags.delta_n = std::abs(step.controls.delta_n) > options.deflection_limit;
      step.flags.negative_thrust = step.controls.thrust < 0.0;
      step.flags.stall = a.alpha > params.alpha_warn;

      const auto wind = lift_drag_side(a.alpha, a.beta, params.force_constants);
      const auto body = body_force_coefficients(wind, a.alpha, a.beta);
      const auto loads = forces_and_moments(qbar, body, step.required, params.S, params.b,
                                            params.c);
      const Eigen::Vector3d res =
          body_axes_residual(step.state, {k.V_dot, beta_dot[i], alpha_dot[i]}, loads,
                             step.controls, params.mass, atmosphere::kG0);
      step.consistency = res.cwiseAbs().maxCoeff() / weight;
    }
  } catch (const FlightError& e) {
    rethrow_with_context(e, "sample " + std::to_string(i) + " (t = " +
                                std::to_string(spec.t[i]) + " s)");
  }
  return out;
}

}  // namespace asymflight
