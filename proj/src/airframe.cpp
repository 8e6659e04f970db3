#include "asymflight/airframe.hpp"

#include <cmath>
#include <string>

#include "asymflight/error.hpp"

namespace asymflight {

Eigen::Matrix3d InertiaTensor::matrix() const {
  Eigen::Matrix3d m;
  m << A, -F, -E,
      -F, B, -D,
      -E, -D, C;
  return m;
}

double StabilityDerivatives::control_determinant() const {
  return C_l_delta_l * C_n_delta_n - C_l_delta_n * C_n_delta_l;
}

double inertia_determinant(const InertiaTensor& in) {
  return in.A * in.B * in.C - in.A * in.D * in.D - in.B * in.E * in.E -
         in.C * in.F * in.F - 2.0 * in.D * in.E * in.F;
}

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw FlightError(ErrorCode::validation, what);
}

bool all_finite(const AirframeParams& p) {
  const auto& i = p.inertia;
  const auto& f = p.force_constants;
  const auto& d = p.derivatives;
  const double values[] = {
      p.mass, p.S, p.c, p.b, i.A, i.B, i.C, i.D, i.E, i.F,
      f.C_L0, f.C_L_alpha, f.C_D0, f.K_CD, f.C_C_beta,
      d.C_l_beta, d.C_l_p, d.C_l_r, d.C_l_delta_l, d.C_l_delta_n,
      d.C_m0, d.C_m_alpha, d.C_m_q, d.C_m_delta_m,
      d.C_n_beta, d.C_n_p, d.C_n_r, d.C_n_delta_l, d.C_n_delta_n,
      p.h_ini, p.alpha_warn};
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

const AirframeParams& validate(const AirframeParams& p) {
  if (!all_finite(p)) fail("non-finite parameter");
  if (p.mass <= 0.0) fail("non-positive mass");
  if (p.S <= 0.0) fail("non-positive wing area");
  if (p.c <= 0.0) fail("non-positive longitudinal reference length");
  if (p.b <= 0.0) fail("non-positive lateral reference length");

  const auto& in = p.inertia;
  if (in.A <= 0.0 || in.B <= 0.0 || in.C <= 0.0) fail("non-positive moment of inertia");
  // Leading principal minors of the inertia matrix.
  if (in.A * in.B - in.F * in.F <= 0.0 || inertia_determinant(in) <= 0.0) {
    fail("non-positive-definite inertia");
  }

  const auto& fc = p.force_constants;
  if (fc.C_L_alpha <= 0.0) fail("non-positive lift slope");
  if (fc.C_D0 < 0.0) fail("negative zero-lift drag");
  if (fc.K_CD < 0.0) fail("negative induced-drag factor");

  if (p.derivatives.control_determinant() == 0.0) fail("singular control effectiveness");
  if (p.derivatives.C_m_delta_m == 0.0) fail("zero elevator effectiveness");

  if (p.h_ini < 0.0 || p.h_ini > kMaxAltitude) fail("take-off altitude out of [0, 20000] m");
  if (p.alpha_warn <= 0.0) fail("non-positive stall warning threshold");
  return p;
}

}  // namespace asymflight
