#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "asymflight.h"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Common {
  std::string airframe;
  std::string output = "-";
  std::string units = "deg";
  bool paper_literal = false;
  double v_min = 1.0;

  af_units unit() const { return units == "rad" ? AF_UNITS_RAD : AF_UNITS_DEG; }
  af_mode mode() const { return paper_literal ? AF_MODE_PAPER_LITERAL : AF_MODE_DERIVATION; }
  double angle(double rad) const { return units == "rad" ? rad : rad * 180.0 / kPi; }
  double to_rad(double value) const { return units == "rad" ? value : value * kPi / 180.0; }
};

int report(af_status status) {
  std::fprintf(stderr, "error: %s: %s\n", af_status_name(status), af_last_error());
  return af_exit_code(status);
}

// Summaries go to stdout unless the data itself is going there.
FILE* summary_stream(const Common& c) { return c.output == "-" ? stderr : stdout; }

template <class T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
};

using Airframe = Handle<af_airframe, af_airframe_free>;
using Schedule = Handle<af_schedule, af_schedule_free>;
using Trajectory = Handle<af_trajectory, af_trajectory_free>;
using Path = Handle<af_path, af_path_free>;
using Inverse = Handle<af_inverse, af_inverse_free>;

void add_common(CLI::App* cmd, Common& c, bool with_airframe) {
  if (with_airframe) {
    cmd->add_option("--airframe", c.airframe, "Airframe key = value file")
        ->required()
        ->check(CLI::ExistingFile);
  }
  cmd->add_option("--units", c.units, "Angle unit at file boundaries")
      ->check(CLI::IsMember({"deg", "rad"}))
      ->capture_default_str();
  cmd->add_option("--v-min", c.v_min, "Hover guard airspeed, m/s")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

struct SimulateArgs {
  Common common;
  std::string controls;
  std::string initial;
  std::string interp = "linear";
  double dt = 0.01;
  std::optional<double> t_end;
  std::optional<double> V;
  std::optional<double> h;
  double psi = 0.0;
  std::size_t decimation = 1;
};

int run_simulate(const SimulateArgs& a) {
  const Common& c = a.common;
  if (a.t_end && !(*a.t_end > 0.0)) {
    std::fprintf(stderr, "error: --t-end must be positive\n");
    return 1;
  }
  if (!(a.dt > 0.0)) {
    std::fprintf(stderr, "error: --dt must be positive\n");
    return 1;
  }
  Airframe airframe;
  if (auto s = af_airframe_load(c.airframe.c_str(), &airframe.ptr)) return report(s);
  Schedule schedule;
  const af_interp interp = a.interp == "zoh" ? AF_INTERP_ZOH : AF_INTERP_LINEAR;
  if (auto s = af_schedule_load(a.controls.c_str(), c.unit(), interp, &schedule.ptr)) {
    return report(s);
  }

  af_sim_config config;
  af_sim_config_default(&config);
  config.dt = a.dt;
  config.t_end = a.t_end ? *a.t_end : af_schedule_end_time(schedule.ptr);
  config.mode = c.mode();
  config.v_min = c.v_min;
  config.decimation = a.decimation;

  if (!a.initial.empty()) {
    if (auto s = af_state_load(a.initial.c_str(), c.unit(), &config.initial)) return report(s);
  } else {
    if (!a.V) {
      std::fprintf(stderr, "error: either --initial or --V is required\n");
      return 1;
    }
    double h = 0.0;
    if (a.h) {
      h = *a.h;
    } else if (auto s = af_airframe_get(airframe.ptr, "h_ini", &h)) {
      return report(s);
    }
    af_trim trim;
    if (auto s = af_trim_solve(airframe.ptr, *a.V, h, AF_TRIM_EXACT, c.v_min, &trim)) {
      return report(s);
    }
    if (auto s = af_trim_state(airframe.ptr, &trim, *a.V, h, c.to_rad(a.psi), &config.initial)) {
      return report(s);
    }
  }

  Trajectory trajectory;
  const af_status status = af_simulate(&config, schedule.ptr, airframe.ptr, &trajectory.ptr);
  if (trajectory.ptr == nullptr) return report(status);
  const std::string failure = status == AF_OK ? "" : af_last_error();
  if (auto s = af_trajectory_write(trajectory.ptr, c.output.c_str(), c.unit())) return report(s);

  af_extrema e;
  af_trajectory_extrema(trajectory.ptr, &e);
  FILE* out = summary_stream(c);
  const char* u = c.units.c_str();
  std::fprintf(out, "rows %zu\n", af_trajectory_rows(trajectory.ptr));
  std::fprintf(out, "alpha_%s %.6g %.6g\n", u, c.angle(e.alpha_min), c.angle(e.alpha_max));
  std::fprintf(out, "delta_l_%s %.6g %.6g\n", u, c.angle(e.delta_l_min), c.angle(e.delta_l_max));
  std::fprintf(out, "delta_m_%s %.6g %.6g\n", u, c.angle(e.delta_m_min), c.angle(e.delta_m_max));
  std::fprintf(out, "delta_n_%s %.6g %.6g\n", u, c.angle(e.delta_n_min), c.angle(e.delta_n_max));
  std::fprintf(out, "thrust_N %.6g %.6g\n", e.thrust_min, e.thrust_max);
  std::fprintf(out, "max_load_factor %.6g\n", e.max_load_factor);
  std::fprintf(out, "stall_warnings %zu\n", e.stall_warnings);
  if (status != AF_OK) {
    std::fprintf(stderr, "error: %s: %s\n", af_status_name(status), failure.c_str());
    return af_exit_code(status) == 1 ? 1 : 3;
  }
  return 0;
}

struct InverseArgs {
  Common common;
  std::string trajectory;
  std::string constraint = "beta";
  double tol = 1e-8;
  int max_iter = 50;
  double deflection_limit = 0.5;
};

int run_inverse(const InverseArgs& a) {
  const Common& c = a.common;
  Airframe airframe;
  if (auto s = af_airframe_load(c.airframe.c_str(), &airframe.ptr)) return report(s);
  Path path;
  const af_constraint constraint = a.constraint == "phi" ? AF_CONSTRAINT_PHI : AF_CONSTRAINT_BETA;
  if (auto s = af_path_load(a.trajectory.c_str(), c.unit(), constraint, &path.ptr)) {
    return report(s);
  }
  af_inverse_options options;
  af_inverse_options_default(&options);
  options.tol = a.tol;
  options.max_iter = a.max_iter;
  options.mode = c.mode();
  options.v_min = c.v_min;
  options.deflection_limit = a.deflection_limit;
  Inverse result;
  if (auto s = af_inverse_solve(path.ptr, airframe.ptr, &options, &result.ptr)) return report(s);
  if (auto s = af_inverse_write(result.ptr, c.output.c_str(), c.unit())) return report(s);

  double max_residual = 0.0, max_consistency = 0.0;
  int max_iterations = 0;
  std::size_t saturated = 0;
  double lo[4] = {INFINITY, INFINITY, INFINITY, INFINITY};
  double hi[4] = {-INFINITY, -INFINITY, -INFINITY, -INFINITY};
  const std::size_t n = af_inverse_rows(result.ptr);
  for (std::size_t i = 0; i < n; ++i) {
    af_inverse_row row;
    af_inverse_row_get(result.ptr, i, &row, nullptr);
    max_residual = std::fmax(max_residual, row.residual);
    max_consistency = std::fmax(max_consistency, row.consistency);
    if (row.iterations > max_iterations) max_iterations = row.iterations;
    if (row.saturation != 0) ++saturated;
    const double v[4] = {row.delta_l, row.delta_m, row.delta_n, row.thrust};
    for (int k = 0; k < 4; ++k) {
      lo[k] = std::fmin(lo[k], v[k]);
      hi[k] = std::fmax(hi[k], v[k]);
    }
  }
  FILE* out = summary_stream(c);
  const char* u = c.units.c_str();
  std::fprintf(out, "samples %zu\n", n);
  std::fprintf(out, "max_residual %.3e\n", max_residual);
  std::fprintf(out, "max_iterations %d\n", max_iterations);
  std::fprintf(out, "max_consistency %.3e\n", max_consistency);
  std::fprintf(out, "saturated_samples %zu\n", saturated);
  std::fprintf(out, "delta_l_%s %.6g %.6g\n", u, c.angle(lo[0]), c.angle(hi[0]));
  std::fprintf(out, "delta_m_%s %.6g %.6g\n", u, c.angle(lo[1]), c.angle(hi[1]));
  std::fprintf(out, "delta_n_%s %.6g %.6g\n", u, c.angle(lo[2]), c.angle(hi[2]));
  std::fprintf(out, "thrust_N %.6g %.6g\n", lo[3], hi[3]);
  return 0;
}

struct TrimArgs {
  Common common;
  double V = 0.0;
  std::optional<double> h;
  bool reduced = false;
};

int run_trim(const TrimArgs& a) {
  const Common& c = a.common;
  Airframe airframe;
  if (auto s = af_airframe_load(c.airframe.c_str(), &airframe.ptr)) return report(s);
  double h = 0.0;
  if (a.h) {
    h = *a.h;
  } else if (auto s = af_airframe_get(airframe.ptr, "h_ini", &h)) {
    return report(s);
  }
  af_trim t;
  const af_trim_mode mode = a.reduced ? AF_TRIM_REDUCED : AF_TRIM_EXACT;
  if (auto s = af_trim_solve(airframe.ptr, a.V, h, mode, c.v_min, &t)) return report(s);
  const char* u = c.units.c_str();
  std::printf("alpha_%s=%.9g delta_m_%s=%.9g thrust_N=%.9g theta_%s=%.9g\n", u, c.angle(t.alpha),
              u, c.angle(t.delta_m), t.thrust, u, c.angle(t.theta));
  if (t.stall_warning) std::fprintf(stderr, "warning: trim angle of attack above stall warning\n");
  return 0;
}

struct AtmosphereArgs {
  std::string output = "-";
  double h_min = 0.0;
  double h_max = 20000.0;
  double step = 1000.0;
};

int run_atmosphere(const AtmosphereArgs& a) {
  if (!(a.step > 0.0) || a.h_max < a.h_min) {
    std::fprintf(stderr, "error: need --step > 0 and --h-max >= --h-min\n");
    return 1;
  }
  if (auto s = af_atmosphere_table_write(a.h_min, a.h_max, a.step, a.output.c_str())) {
    return report(s);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Six-degree-of-freedom asymmetric fixed-wing flight simulator"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Integrate the equations of motion");
  add_common(simulate, sim.common, true);
  simulate->add_option("--controls", sim.controls, "Control schedule CSV")
      ->required()
      ->check(CLI::ExistingFile);
  simulate->add_option("--initial", sim.initial, "Initial state key = value file")
      ->check(CLI::ExistingFile);
  simulate->add_option("--V", sim.V, "Trimmed initial airspeed, m/s");
  simulate->add_option("--h", sim.h, "Trimmed initial altitude, m (default h_ini)");
  simulate->add_option("--psi", sim.psi, "Trimmed initial heading");
  simulate->add_option("--dt", sim.dt, "Step, s")->capture_default_str();
  simulate->add_option("--t-end", sim.t_end, "End time, s (default: schedule end)");
  simulate->add_option("--interp", sim.interp, "Control interpolation")
      ->check(CLI::IsMember({"linear", "zoh"}))
      ->capture_default_str();
  simulate->add_option("--decimation", sim.decimation, "Keep every n-th step")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--output", sim.common.output, "Trajectory CSV, - for stdout");
  simulate->add_flag("--paper-literal", sim.common.paper_literal,
                     "Use the printed side-slip thrust term");

  InverseArgs inv;
  auto* inverse = app.add_subcommand("inverse", "Recover controls from a flight path");
  add_common(inverse, inv.common, true);
  inverse->add_option("--trajectory", inv.trajectory, "Trajectory spec CSV")
      ->required()
      ->check(CLI::ExistingFile);
  inverse->add_option("--constraint", inv.constraint, "Prescribed attitude variable")
      ->check(CLI::IsMember({"beta", "phi"}))
      ->capture_default_str();
  inverse->add_option("--tol", inv.tol, "Newton tolerance")->capture_default_str();
  inverse->add_option("--max-iter", inv.max_iter, "Newton iteration cap")->capture_default_str();
  inverse->add_option("--deflection-limit", inv.deflection_limit, "Reported saturation, rad")
      ->capture_default_str();
  inverse->add_option("--output", inv.common.output, "Control history CSV, - for stdout");
  inverse->add_flag("--paper-literal", inv.common.paper_literal,
                    "Use the printed side-slip thrust term");

  TrimArgs trim;
  auto* trim_cmd = app.add_subcommand("trim", "Steady level flight trim");
  add_common(trim_cmd, trim.common, true);
  trim_cmd->add_option("--V", trim.V, "Airspeed, m/s")->required();
  trim_cmd->add_option("--h", trim.h, "Altitude, m (default h_ini)");
  trim_cmd->add_flag("--reduced", trim.reduced, "Two-equation balance T = qSC_D, W = qSC_L");

  AtmosphereArgs atm;
  auto* atmosphere = app.add_subcommand("atmosphere", "Standard atmosphere table");
  atmosphere->add_option("--h-min", atm.h_min, "First altitude, m")->capture_default_str();
  atmosphere->add_option("--h-max", atm.h_max, "Last altitude, m")->capture_default_str();
  atmosphere->add_option("--step", atm.step, "Altitude step, m")->capture_default_str();
  atmosphere->add_option("--output", atm.output, "Table CSV, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (simulate->parsed()) return run_simulate(sim);
  if (inverse->parsed()) return run_inverse(inv);
  if (trim_cmd->parsed()) return run_trim(trim);
  return run_atmosphere(atm);
}
