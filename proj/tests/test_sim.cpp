#include <cmath>

#include "doctest.h"
#include "support.hpp"

#include "asymflight/atmosphere.hpp"
#include "asymflight/error.hpp"
#include "asymflight/sim.hpp"

using namespace asymflight;

namespace {

AirframeParams light_aircraft() {
  auto p = testing::asymmetric_airframe();
  p.mass = 1000;
  p.S = 16;
  p.c = 1.5;
  p.b = 10;
  p.inertia = {1300, 1800, 2600, 0, 50, 0};
  p.force_constants = {0, 5, 0.02, 0.05, -0.4};
  p.h_ini = 0;
  return p;
}

// Smooth excitation of all four controls about trim, knots every 0.1 s.
ControlSchedule smooth_maneuver(const TrimSolution& trim, double t_end, double amp = 1.0) {
  std::vector<double> t;
  std::vector<ControlInputs> u;
  const auto u0 = trim_controls(trim);
  const int n = static_cast<int>(std::lround(t_end / 0.1));
  for (int i = 0; i <= n; ++i) {
    const double ti = 0.1 * i;
    const double e = amp * (1 - std::exp(-(ti / 2) * (ti / 2)));
    t.push_back(ti);
    u.push_back({u0.delta_l + e * 0.02 * std::sin(0.5 * ti),
                 u0.delta_m + e * 0.02 * std::sin(0.3 * ti),
                 u0.delta_n + e * 0.02 * std::sin(0.7 * ti),
                 u0.thrust * (1 + e * 0.1 * std::sin(0.2 * ti))});
  }
  return ControlSchedule(t, u);
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const FlightError& e) {
    return e.code();
  }
  return ErrorCode{};
}

}  // namespace

TEST_CASE("control schedule interpolation") {
  const ControlSchedule lin({0, 1, 2}, {{0, 0, 0, 0}, {1, 2, 3, 10}, {1, 2, 3, 20}});
  const auto mid = lin.at(0.5);
  CHECK(mid.delta_l == doctest::Approx(0.5));
  CHECK(mid.delta_n == doctest::Approx(1.5));
  CHECK(mid.thrust == doctest::Approx(5));
  CHECK(lin.at(1.5).thrust == doctest::Approx(15));
  CHECK(lin.at(5).thrust == 20);

  const ControlSchedule zoh({0, 1, 2}, {{0, 0, 0, 0}, {1, 2, 3, 10}, {1, 2, 3, 20}},
                            Interpolation::zero_order_hold);
  CHECK(zoh.at(0.99).delta_l == 0);
  CHECK(zoh.at(1.0).delta_l == 1);
  CHECK(zoh.at(1.5).thrust == 10);

  CHECK(code_of([] { ControlSchedule({0.5, 1}, {{}, {}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { ControlSchedule({0, 1, 1}, {{}, {}, {}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { ControlSchedule({0, 1}, {{0, 0, 0, -1}, {}}); }) ==
        ErrorCode::invalid_argument);
}

TEST_CASE("trim hand evaluation, two-equation balance") {
  const auto p = light_aircraft();
  const auto t = trim_steady_level(50, 0, p, TrimMode::reduced);
  CHECK(t.qbar == doctest::Approx(1531.25));
  CHECK(t.C_L == doctest::Approx(9806.65 / (1531.25 * 16)));
  CHECK(t.C_L == doctest::Approx(0.40026).epsilon(1e-4));
  CHECK(t.alpha == doctest::Approx(0.08005).epsilon(1e-4));
  CHECK(t.thrust == doctest::Approx(1531.25 * 16 * (0.02 + 0.05 * t.C_L * t.C_L)));
  CHECK(t.thrust == doctest::Approx(686.3).epsilon(1e-4));
  CHECK(t.theta == t.alpha);
  const double Cm = moment_coefficients(t.alpha, 0, {0, 0, 0}, 50, {0, t.delta_m, 0, 0},
                                        p.derivatives, p.b, p.c).C_m;
  CHECK(std::abs(Cm) <= 1e-14);
}

TEST_CASE("exact trim balances both force components") {
  const auto p = light_aircraft();
  const auto t = trim_steady_level(50, 0, p);
  const double qs = t.qbar * p.S;
  const double W = p.mass * atmosphere::kG0;
  CHECK(std::abs(qs * (t.C_L + t.C_D * std::tan(t.alpha)) - W) <= 1e-9 * W);
  CHECK(std::abs(t.thrust * std::cos(t.alpha) - qs * t.C_D) <= 1e-9 * W);
  // Close to the two-equation answer at small alpha.
  const auto r = trim_steady_level(50, 0, p, TrimMode::reduced);
  CHECK(std::abs(t.alpha - r.alpha) < 0.005);
}

TEST_CASE("weightless trim") {
  auto p = testing::asymmetric_airframe();
  p.mass = 1e-12;
  const auto t = trim_steady_level(50, 1000, p, TrimMode::reduced);
  CHECK(std::abs(t.C_L) < 1e-12);
  CHECK(t.alpha == doctest::Approx(-p.force_constants.C_L0 / p.force_constants.C_L_alpha));
}

TEST_CASE("trim errors and stall warning") {
  auto p = testing::asymmetric_airframe();
  CHECK(trim_steady_level(20, 1000, p).stall_warning);
  CHECK_FALSE(trim_steady_level(50, 1000, p).stall_warning);
  CHECK(code_of([&] { trim_steady_level(5, 1000, p); }) == ErrorCode::unattainable_trim);
  CHECK(code_of([&] { trim_steady_level(0.5, 1000, p); }) == ErrorCode::hover_singularity);
  p.force_constants.C_L_alpha = 0;
  CHECK(code_of([&] { trim_steady_level(50, 1000, p); }) == ErrorCode::unattainable_trim);
}

TEST_CASE("one RK4 step from trim only advances position") {
  const auto p = testing::asymmetric_airframe();
  const auto trim = trim_steady_level(50, 1000, p);
  for (double dt : {0.001, 0.01, 0.1}) {
    const auto s0 = trim_state(trim, 50, 1000, p, 0.4);
    const auto sched = ControlSchedule::constant(trim_controls(trim), 1);
    const auto s1 = rk4_step(s0, 0, sched, p, dt);
    const auto d = (s1.to_vector() - s0.to_vector()).eval();
    CHECK(d.head<9>().cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(d(9) == doctest::Approx(50 * dt * std::cos(0.4)));
    CHECK(d(10) == doctest::Approx(50 * dt * std::sin(0.4)));
    CHECK(std::abs(d(11)) <= 1e-12);
  }
}

TEST_CASE("pure roll kinematics") {
  auto p = testing::asymmetric_airframe();
  p.force_constants = {};
  p.derivatives = {};
  p.inertia = {5, 5, 5, 0, 0, 0};
  FlightState s;
  s.wind = {100, 0, 0};
  s.rates = {0.5, 0, 0};
  const auto sched = ControlSchedule::constant({0, 0, 0, 0}, 2);
  double t = 0;
  for (int k = 0; k < 100; ++k, t += 0.01) s = rk4_step(s, t, sched, p, 0.01);
  CHECK(s.euler.phi == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.rates.p == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(s.euler.theta) <= 1e-14);
}

TEST_CASE("roll angle wraps into (-pi, pi]") {
  auto p = testing::asymmetric_airframe();
  p.force_constants = {};
  p.derivatives = {};
  p.inertia = {5, 5, 5, 0, 0, 0};
  FlightState s;
  s.wind = {100, 0, 0};
  s.rates = {4.0, 0, 0};
  const auto sched = ControlSchedule::constant({}, 2);
  double t = 0;
  for (int k = 0; k < 200; ++k, t += 0.01) {
    s = rk4_step(s, t, sched, p, 0.01);
    CHECK(s.euler.phi > -std::numbers::pi);
    CHECK(s.euler.phi <= std::numbers::pi);
  }
  CHECK(s.euler.phi == doctest::Approx(8.0 - 2 * std::numbers::pi).epsilon(1e-9));
}

TEST_CASE("observed order of the integrator") {
  const auto p = testing::asymmetric_airframe();
  const auto trim = trim_steady_level(50, 1000, p);
  const auto sched = smooth_maneuver(trim, 10);
  SimulationConfig cfg;
  cfg.t_end = 10;
  cfg.initial = trim_state(trim, 50, 1000, p);
  std::vector<FlightState::Vector> end;
  for (double dt : {0.02, 0.01, 0.005, 0.0025}) {
    cfg.dt = dt;
    end.push_back(simulate(cfg, sched, p).rows.back().state.to_vector());
  }
  // Self-convergence against the finest run.
  const double e1 = (end[0] - end[3]).norm();
  const double e2 = (end[1] - end[3]).norm();
  const double ratio = e1 / e2;
  CHECK(ratio > 14);
  CHECK(ratio < 22);
}

TEST_CASE("zero-duration run has two rows") {
  const auto p = testing::asymmetric_airframe();
  const auto trim = trim_steady_level(50, 1000, p);
  SimulationConfig cfg;
  cfg.dt = 0.01;
  cfg.t_end = 0.01;
  cfg.initial = trim_state(trim, 50, 1000, p);
  const auto rec = simulate(cfg, ControlSchedule::constant(trim_controls(trim), 0.01), p);
  CHECK(rec.rows.size() == 2);
  CHECK_FALSE(rec.failure);
}

TEST_CASE("configuration errors") {
  const auto p = testing::asymmetric_airframe();
  const auto sched = ControlSchedule::constant({0, 0, 0, 10}, 1);
  SimulationConfig cfg;
  cfg.initial.wind = {50, 0, 0};
  cfg.t_end = 0;
  CHECK(code_of([&] { simulate(cfg, sched, p); }) == ErrorCode::invalid_argument);
  cfg.t_end = 1;
  cfg.dt = 0;
  CHECK(code_of([&] { simulate(cfg, sched, p); }) == ErrorCode::invalid_argument);
  cfg.dt = 0.01;
  cfg.t_end = 2;
  CHECK(code_of([&] { simulate(cfg, sched, p); }) == ErrorCode::invalid_argument);
}

TEST_CASE("elevator doublet stays longitudinal on a symmetric airframe") {
  const auto p = testing::symmetric_airframe();
  const auto trim = trim_steady_level(50, 1000, p);
  const auto u0 = trim_controls(trim);
  auto up = u0, down = u0;
  up.delta_m -= 0.03;
  down.delta_m += 0.03;
  const ControlSchedule sched({0, 1, 2, 3, 10}, {u0, up, down, u0, u0},
                              Interpolation::zero_order_hold);
  SimulationConfig cfg;
  cfg.t_end = 10;
  cfg.initial = trim_state(trim, 50, 1000, p);
  const auto rec = simulate(cfg, sched, p);
  REQUIRE_FALSE(rec.failure);
  double max_q = 0, max_lat = 0;
  for (const auto& row : rec.rows) {
    max_q = std::max(max_q, std::abs(row.state.rates.q));
    max_lat = std::max({max_lat, std::abs(row.state.wind.beta), std::abs(row.state.euler.phi),
                        std::abs(row.state.rates.p), std::abs(row.state.rates.r)});
  }
  CHECK(max_q > 0.01);
  CHECK(rec.extrema.alpha.max - rec.extrema.alpha.min > 0.005);
  CHECK(max_lat <= 1e-12);
  CHECK(rec.extrema.delta_m.min == doctest::Approx(u0.delta_m - 0.03));
}

TEST_CASE("identical inputs give identical records") {
  const auto p = testing::asymmetric_airframe();
  const auto trim = trim_steady_level(50, 1000, p);
  const auto sched = smooth_maneuver(trim, 5);
  SimulationConfig cfg;
  cfg.t_end = 5;
  cfg.initial = trim_state(trim, 50, 1000, p);
  const auto a = simulate(cfg, sched, p);
  const auto b = simulate(cfg, sched, p);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].state.to_vector() == b.rows[i].state.to_vector());
  }
}

TEST_CASE("path-angle identities hold along a maneuver") {
  const auto p = testing::asymmetric_airframe();
  const auto trim = trim_steady_level(50, 1000, p);
  SimulationConfig cfg;
  cfg.t_end = 20;
  cfg.initial = trim_state(trim, 50, 1000, p);
  const auto rec = simulate(cfg, smooth_maneuver(trim, 20, 3.0), p);
  REQUIRE_FALSE(rec.failure);
  for (const auto& row : rec.rows) {
    const auto r = path_angle_residuals(row.state.wind, row.state.euler, row.outputs.path);
    CHECK(std::abs(r.r16) <= 1e-9);
    CHECK(std::abs(r.r17) <= 1e-9);
  }
}

TEST_CASE("extrema and load factor at trim") {
  const auto p = testing::asymmetric_airframe();
  const auto trim = trim_steady_level(50, 1000, p);
  SimulationConfig cfg;
  cfg.t_end = 1;
  cfg.initial = trim_state(trim, 50, 1000, p);
  const auto rec = simulate(cfg, ControlSchedule::constant(trim_controls(trim), 1), p);
  CHECK(rec.extrema.alpha.min == doctest::Approx(trim.alpha));
  CHECK(rec.extrema.thrust.max == doctest::Approx(trim.thrust));
  const double lift_share = std::abs(rec.rows[0].outputs.loads.F_z) / (p.mass * atmosphere::kG0);
  CHECK(rec.extrema.max_load_factor == doctest::Approx(lift_share));
  CHECK(rec.extrema.max_load_factor == doctest::Approx(1.0).epsilon(0.02));
  CHECK(rec.extrema.stall_warnings == 0);
}

TEST_CASE("numerical failure keeps the partial record") {
  const auto p = testing::asymmetric_airframe();
  const auto trim = trim_steady_level(50, 1000, p);
  auto s = trim_state(trim, 50, 1000, p);
  s.euler.theta = -0.6;
  s.position.z_g = p.h_ini + 480;  // h = -480 m, diving
  SimulationConfig cfg;
  cfg.t_end = 10;
  cfg.initial = s;
  const auto rec = simulate(cfg, ControlSchedule::constant(trim_controls(trim), 10), p);
  REQUIRE(rec.failure);
  CHECK(*rec.failure_code == static_cast<int>(ErrorCode::altitude_out_of_range));
  CHECK(rec.failure->find("step ") == 0);
  CHECK(rec.failure->find("t = ") != std::string::npos);
  CHECK(rec.rows.size() > 1);
  CHECK(rec.failure_time > 0);
  CHECK(rec.failure_time < 10);
}

TEST_CASE("decimation keeps every n-th step") {
  const auto p = testing::asymmetric_airframe();
  const auto trim = trim_steady_level(50, 1000, p);
  SimulationConfig cfg;
  cfg.t_end = 1;
  cfg.decimation = 10;
  cfg.initial = trim_state(trim, 50, 1000, p);
  const auto rec = simulate(cfg, ControlSchedule::constant(trim_controls(trim), 1), p);
  CHECK(rec.rows.size() == 11);
  CHECK(rec.rows.back().t == doctest::Approx(1.0));
}
