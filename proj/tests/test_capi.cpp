#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "asymflight.h"
#include "doctest.h"

namespace {

const std::string kData = ASYMFLIGHT_DATA_DIR;

af_airframe* load_uav() {
  af_airframe* af = nullptr;
  REQUIRE(af_airframe_load((kData + "/synthetic_uav.airframe").c_str(), &af) == AF_OK);
  return af;
}

}  // namespace

TEST_CASE("airframe handle") {
  af_airframe* af = load_uav();
  double v = 0;
  CHECK(af_airframe_get(af, "mass", &v) == AF_OK);
  CHECK(v == 40);
  CHECK(af_airframe_get(af, "wingspan", &v) == AF_ERR_INVALID_ARGUMENT);
  af_airframe_free(af);

  af_airframe* bad = nullptr;
  CHECK(af_airframe_parse("mass = abc\n", &bad) == AF_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::string(af_last_error()).find("abc") != std::string::npos);
  CHECK(af_airframe_load("/nonexistent", &bad) == AF_ERR_IO);
  CHECK(af_airframe_load(nullptr, &bad) == AF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("status names and exit codes") {
  CHECK(std::string(af_status_name(AF_OK)) == "ok");
  CHECK(af_exit_code(AF_OK) == 0);
  CHECK(af_exit_code(AF_ERR_INVALID_ARGUMENT) == 1);
  CHECK(af_exit_code(AF_ERR_PARSE) == 2);
  CHECK(af_exit_code(AF_ERR_NON_UNIFORM_SAMPLING) == 2);
  CHECK(af_exit_code(AF_ERR_NO_CONVERGENCE) == 3);
  CHECK(af_exit_code(AF_ERR_HOVER_SINGULARITY) == 3);
}

TEST_CASE("atmosphere") {
  af_atmosphere_sample s{};
  CHECK(af_atmosphere(0, &s) == AF_OK);
  CHECK(s.rho == doctest::Approx(1.225).epsilon(1e-4));
  CHECK(s.sigma == doctest::Approx(1));
  CHECK(af_atmosphere(-1000, &s) == AF_OK);
  CHECK(s.rho > 1.225);
  CHECK(af_atmosphere(20001, &s) == AF_ERR_ALTITUDE_OUT_OF_RANGE);
}

TEST_CASE("trim, simulate and inverse through handles") {
  af_airframe* af = load_uav();
  af_trim trim{};
  REQUIRE(af_trim_solve(af, 50, 1000, AF_TRIM_EXACT, 1.0, &trim) == AF_OK);
  CHECK(trim.thrust > 0);
  CHECK(af_trim_solve(af, 5, 1000, AF_TRIM_EXACT, 1.0, &trim) == AF_ERR_UNATTAINABLE_TRIM);
  REQUIRE(af_trim_solve(af, 50, 1000, AF_TRIM_EXACT, 1.0, &trim) == AF_OK);

  af_sim_config cfg;
  af_sim_config_default(&cfg);
  cfg.t_end = 3;
  REQUIRE(af_trim_state(af, &trim, 50, 1000, 0, &cfg.initial) == AF_OK);
  af_schedule* sched = nullptr;
  REQUIRE(af_schedule_constant(&trim, 3, &sched) == AF_OK);
  CHECK(af_schedule_end_time(sched) == 3);
  af_trajectory* traj = nullptr;
  REQUIRE(af_simulate(&cfg, sched, af, &traj) == AF_OK);
  REQUIRE(af_trajectory_rows(traj) == 301);

  std::vector<double> t, x, y, z;
  for (size_t i = 0; i < af_trajectory_rows(traj); ++i) {
    double ti = 0;
    af_state s{};
    REQUIRE(af_trajectory_state(traj, i, &ti, &s) == AF_OK);
    CHECK(s.alpha == doctest::Approx(trim.alpha).epsilon(1e-9));
    t.push_back(ti);
    x.push_back(s.x_g);
    y.push_back(s.y_g);
    z.push_back(s.z_g);
  }
  double ti = 0;
  af_state s{};
  CHECK(af_trajectory_state(traj, 9999, &ti, &s) == AF_ERR_INVALID_ARGUMENT);
  af_extrema ex{};
  REQUIRE(af_trajectory_extrema(traj, &ex) == AF_OK);
  CHECK(ex.thrust_min == doctest::Approx(trim.thrust));
  CHECK(ex.stall_warnings == 0);

  af_path* path = nullptr;
  REQUIRE(af_path_from_arrays(t.size(), t.data(), x.data(), y.data(), z.data(), nullptr,
                              AF_CONSTRAINT_BETA, &path) == AF_OK);
  af_inverse_options opt;
  af_inverse_options_default(&opt);
  af_inverse* inv = nullptr;
  REQUIRE(af_inverse_solve(path, af, &opt, &inv) == AF_OK);
  REQUIRE(af_inverse_rows(inv) == t.size());
  af_inverse_row row{};
  REQUIRE(af_inverse_row_get(inv, 150, &row, nullptr) == AF_OK);
  CHECK(row.delta_m == doctest::Approx(trim.delta_m).epsilon(1e-6));
  CHECK(row.thrust == doctest::Approx(trim.thrust).epsilon(1e-6));
  CHECK(row.residual <= opt.tol);

  af_inverse_free(inv);
  af_path_free(path);
  af_trajectory_free(traj);
  af_schedule_free(sched);
  af_airframe_free(af);
}

TEST_CASE("partial record on mid-run failure") {
  af_airframe* af = load_uav();
  af_trim trim{};
  REQUIRE(af_trim_solve(af, 50, 0, AF_TRIM_EXACT, 1.0, &trim) == AF_OK);
  af_sim_config cfg;
  af_sim_config_default(&cfg);
  cfg.t_end = 20;
  REQUIRE(af_trim_state(af, &trim, 50, 0, 0, &cfg.initial) == AF_OK);
  cfg.initial.z_g = 1480;  // h = -480
  cfg.initial.theta = -0.6;
  af_schedule* sched = nullptr;
  REQUIRE(af_schedule_constant(&trim, 20, &sched) == AF_OK);
  af_trajectory* traj = nullptr;
  CHECK(af_simulate(&cfg, sched, af, &traj) == AF_ERR_ALTITUDE_OUT_OF_RANGE);
  REQUIRE(traj != nullptr);
  CHECK(af_trajectory_rows(traj) > 1);
  CHECK(af_trajectory_rows(traj) < 2001);
  af_trajectory_free(traj);
  af_schedule_free(sched);
  af_airframe_free(af);
}

TEST_CASE("schedule and path guards") {
  af_schedule* sched = nullptr;
  const double t[2] = {0, 0};
  const double u[2] = {0, 0};
  CHECK(af_schedule_from_arrays(2, t, u, u, u, u, AF_INTERP_LINEAR, &sched) != AF_OK);
  CHECK(sched == nullptr);
  af_path* path = nullptr;
  const double tp[3] = {0, 0.1, 0.2};
  const double xp[3] = {0, 5, 10};
  REQUIRE(af_path_from_arrays(3, tp, xp, u, u, nullptr, AF_CONSTRAINT_BETA, &path) == AF_OK);
  af_airframe* af = load_uav();
  af_inverse_options opt;
  af_inverse_options_default(&opt);
  af_inverse* inv = nullptr;
  CHECK(af_inverse_solve(path, af, &opt, &inv) == AF_ERR_TOO_FEW_SAMPLES);
  af_path_free(path);
  af_airframe_free(af);
}
