#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

#include "asymflight/error.hpp"
#include "asymflight/io.hpp"
#include "asymflight/sim.hpp"

using namespace asymflight;

namespace {

std::string airframe_text(const AirframeParams& p) { return io::format_airframe(p); }

ErrorCode parse_code(const std::string& text, std::string* message = nullptr) {
  try {
    io::parse_airframe(text);
  } catch (const FlightError& e) {
    if (message) *message = e.what();
    return e.code();
  }
  return ErrorCode{};
}

std::string replace_line(const std::string& text, const std::string& key, const std::string& line) {
  std::istringstream in(text);
  std::string out, l;
  while (std::getline(in, l)) {
    if (l.rfind(key + " ", 0) == 0) {
      if (!line.empty()) out += line + "\n";
    } else {
      out += l + "\n";
    }
  }
  return out;
}

}  // namespace

TEST_CASE("airframe text roundtrip") {
  const auto p = testing::asymmetric_airframe();
  const auto q = io::parse_airframe(airframe_text(p));
  for (const auto& key : io::airframe_keys()) {
    CHECK(*io::airframe_value(q, key) == *io::airframe_value(p, key));
  }
  CHECK(io::airframe_keys().size() == 30);
}

TEST_CASE("airframe parse errors") {
  const auto text = airframe_text(testing::asymmetric_airframe());
  std::string msg;
  CHECK(parse_code(replace_line(text, "C_m_delta_m", ""), &msg) == ErrorCode::parse_error);
  CHECK(msg.find("C_m_delta_m") != std::string::npos);

  CHECK(parse_code(replace_line(text, "mass", "mass = abc"), &msg) == ErrorCode::parse_error);
  CHECK(msg.find("abc") != std::string::npos);
  CHECK(msg.find("mass") != std::string::npos);

  CHECK(parse_code(text + "wingspan = 3\n", &msg) == ErrorCode::parse_error);
  CHECK(msg.find("wingspan") != std::string::npos);
  CHECK(parse_code(text + "mass = 3\n") == ErrorCode::parse_error);
  CHECK(parse_code(text + "just words\n") == ErrorCode::parse_error);

  CHECK(parse_code(replace_line(text, "mass", "mass = -1")) == ErrorCode::validation);
  CHECK(parse_code("# only a comment\n" + text) == ErrorCode{});
}

TEST_CASE("shipped airframes load") {
  for (const char* name : {"synthetic_uav.airframe", "light_aircraft.airframe"}) {
    CHECK_NOTHROW(io::load_airframe(std::string(ASYMFLIGHT_DATA_DIR) + "/" + name));
  }
  try {
    io::load_airframe("/nonexistent/x.airframe");
    FAIL("expected io error");
  } catch (const FlightError& e) {
    CHECK(e.code() == ErrorCode::io_error);
  }
}

TEST_CASE("angle units convert on input") {
  const double d2r = std::numbers::pi / 180;
  const auto deg = io::parse_control_schedule(
      "t,delta_l,delta_m,delta_n,thrust\n0,1,2,3,100\n1,-1,-2,-3,50\n", io::AngleUnit::deg);
  const auto rad = io::parse_control_schedule(
      "t,delta_l,delta_m,delta_n,thrust\n0,1,2,3,100\n1,-1,-2,-3,50\n", io::AngleUnit::rad);
  CHECK(deg.at(0).delta_m == doctest::Approx(2 * d2r));
  CHECK(rad.at(0).delta_m == 2);
  CHECK(deg.at(0.5).thrust == doctest::Approx(75));
  CHECK(deg.at(0.5).delta_l == doctest::Approx(0).scale(1));

  const auto s = io::parse_state(
      "V = 50\nbeta = 1\nalpha = 2\np = 3\nq = 0\nr = 0\nphi = 10\ntheta = 2\npsi = 90\n"
      "x_g = 1\ny_g = 2\nz_g = -3\n",
      io::AngleUnit::deg);
  CHECK(s.wind.V == 50);
  CHECK(s.wind.alpha == doctest::Approx(2 * d2r));
  CHECK(s.rates.p == doctest::Approx(3 * d2r));
  CHECK(s.euler.psi == doctest::Approx(std::numbers::pi / 2));
  CHECK(s.position.z_g == -3);
}

TEST_CASE("control schedule errors") {
  auto code = [](const std::string& text) {
    try {
      io::parse_control_schedule(text, io::AngleUnit::deg);
    } catch (const FlightError& e) {
      return e.code();
    }
    return ErrorCode{};
  };
  CHECK(code("t,delta_l,delta_m,delta_n\n0,0,0,0\n") == ErrorCode::parse_error);
  CHECK(code("t,delta_l,delta_m,delta_n,thrust\n0,0,x,0,1\n") == ErrorCode::parse_error);
  CHECK(code("thrust,delta_n,delta_m,delta_l,t\n1,0,0,0,0\n2,0,0,0,1\n") == ErrorCode{});
}

TEST_CASE("trajectory spec constraint column") {
  const std::string beta = "t,x_g,y_g,z_g,beta\n0,0,0,0,1\n0.1,5,0,0,1\n";
  const auto spec = io::parse_trajectory_spec(beta, io::AngleUnit::deg, Constraint::sideslip);
  REQUIRE(spec.constraint_values.size() == 2);
  CHECK(spec.constraint_values[1] == doctest::Approx(std::numbers::pi / 180));
  CHECK_THROWS_AS(io::parse_trajectory_spec(beta, io::AngleUnit::deg, Constraint::bank), FlightError);
  const auto bare = io::parse_trajectory_spec("t,x_g,y_g,z_g\n0,0,0,0\n", io::AngleUnit::deg,
                                              Constraint::bank);
  CHECK(bare.constraint == Constraint::bank);
  CHECK(bare.constraint_values.empty());
}

TEST_CASE("output headers carry units and output is deterministic") {
  const auto deg = io::trajectory_columns(io::AngleUnit::deg);
  const auto rad = io::trajectory_columns(io::AngleUnit::rad);
  CHECK(deg.size() == rad.size());
  CHECK(std::find(deg.begin(), deg.end(), "alpha_deg") != deg.end());
  CHECK(std::find(rad.begin(), rad.end(), "alpha_rad") != rad.end());
  CHECK(std::find(deg.begin(), deg.end(), "p_deg_s") != deg.end());
  CHECK(std::find(deg.begin(), deg.end(), "qbar_Pa") != deg.end());

  const auto p = testing::asymmetric_airframe();
  const auto trim = trim_steady_level(50, 1000, p);
  SimulationConfig cfg;
  cfg.t_end = 2;
  cfg.initial = trim_state(trim, 50, 1000, p);
  cfg.initial.rates.p = 0.1;
  std::string out[2];
  for (auto& o : out) {
    std::ostringstream os;
    io::write_trajectory_csv(os, simulate(cfg, ControlSchedule::constant(trim_controls(trim), 2), p),
                             io::AngleUnit::deg);
    o = os.str();
  }
  CHECK(out[0] == out[1]);
  std::istringstream in(out[0]);
  std::string header;
  std::getline(in, header);
  CHECK(std::count(header.begin(), header.end(), ',') + 1 == static_cast<long>(deg.size()));
  std::size_t lines = 0;
  for (std::string l; std::getline(in, l);) ++lines;
  CHECK(lines == 201);
}

TEST_CASE("atmosphere table rows") {
  std::ostringstream os;
  io::write_atmosphere_table(os, 0, 20000, 1000);
  std::istringstream in(os.str());
  std::string l;
  std::getline(in, l);
  CHECK(l == "h_m,rho_kg_m3,sigma,theta_K,P_Pa,a_m_s");
  std::size_t n = 0;
  while (std::getline(in, l)) ++n;
  CHECK(n == 21);
}
