#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "asymflight/io.hpp"

namespace testing {

inline asymflight::AirframeParams asymmetric_airframe() {
  asymflight::AirframeParams p;
  p.mass = 40.0;
  p.S = 1.2;
  p.c = 0.3;
  p.b = 5.0;
  p.inertia = {12.0, 3.0, 16.0, 0.05, 0.4, 0.03};
  p.force_constants = {0.1, 5.0, 0.03, 0.05, -0.5};
  p.derivatives.C_l_beta = -0.08;
  p.derivatives.C_l_p = -0.25;
  p.derivatives.C_l_r = 0.05;
  p.derivatives.C_l_delta_l = 0.15;
  p.derivatives.C_l_delta_n = 0.01;
  p.derivatives.C_m0 = 0.02;
  p.derivatives.C_m_alpha = -0.8;
  p.derivatives.C_m_q = -6.0;
  p.derivatives.C_m_delta_m = -1.0;
  p.derivatives.C_n_beta = 0.08;
  p.derivatives.C_n_p = -0.015;
  p.derivatives.C_n_r = -0.075;
  p.derivatives.C_n_delta_l = -0.01;
  p.derivatives.C_n_delta_n = -0.08;
  p.h_ini = 1000.0;
  return p;
}

// Same airframe with an x-z symmetry plane and no lateral/longitudinal
// cross derivatives in the force model.
inline asymflight::AirframeParams symmetric_airframe() {
  auto p = asymmetric_airframe();
  p.inertia.D = 0.0;
  p.inertia.F = 0.0;
  return p;
}

inline double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

template <class V>
double rel_err_vec(const V& a, const V& b) {
  const double scale = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / scale;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

  // Random inertia tensor with positive-definite matrix form.
  asymflight::InertiaTensor inertia() {
    while (true) {
      asymflight::InertiaTensor t{uniform(1, 100), uniform(1, 100), uniform(1, 100),
                                  uniform(-10, 10), uniform(-10, 10), uniform(-10, 10)};
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.matrix());
      if (es.eigenvalues().minCoeff() > 0.05) return t;
    }
  }

  asymflight::FlightState state() {
    asymflight::FlightState s;
    s.wind = {uniform(20, 120), uniform(-0.4, 0.4), uniform(-0.5, 0.5)};
    s.rates = {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
    s.euler = {uniform(-3, 3), uniform(-1.4, 1.4), uniform(-3, 3)};
    s.position = {uniform(-1000, 1000), uniform(-1000, 1000), uniform(-800, 800)};
    return s;
  }

  asymflight::ControlInputs controls() {
    return {uniform(-0.3, 0.3), uniform(-0.3, 0.3), uniform(-0.3, 0.3), uniform(0, 500)};
  }

 private:
  std::mt19937_64 gen_;
};

// Passive (frame) rotations about single axes.
inline Eigen::Matrix3d frame_x(double a) {
  return Eigen::AngleAxisd(a, Eigen::Vector3d::UnitX()).toRotationMatrix().transpose();
}
inline Eigen::Matrix3d frame_y(double a) {
  return Eigen::AngleAxisd(a, Eigen::Vector3d::UnitY()).toRotationMatrix().transpose();
}
inline Eigen::Matrix3d frame_z(double a) {
  return Eigen::AngleAxisd(a, Eigen::Vector3d::UnitZ()).toRotationMatrix().transpose();
}

// Wind-to-body rotation: body components of a vector given in wind axes.
inline Eigen::Matrix3d wind_to_body(double alpha, double beta) {
  return Eigen::AngleAxisd(-alpha, Eigen::Vector3d::UnitY()).toRotationMatrix() *
         Eigen::AngleAxisd(beta, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

}  // namespace testing
