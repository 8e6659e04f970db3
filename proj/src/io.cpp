#include "asymflight/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "asymflight/atmosphere.hpp"
#include "asymflight/error.hpp"

namespace asymflight::io {

namespace {

constexpr double kDegPerRad = 180.0 / std::numbers::pi;

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw FlightError(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string_view strip_comment(std::string_view s) {
  const auto hash = s.find('#');
  return hash == std::string_view::npos ? s : s.substr(0, hash);
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t start = 0, number = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    const auto raw = text.substr(start, end == std::string_view::npos ? end : end - start);
    ++number;
    const auto line = trim(strip_comment(raw));
    if (!line.empty()) lines.emplace_back(number, line);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return lines;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::size_t> line_numbers;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    return -1;
  }
};

Table parse_table(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw FlightError(ErrorCode::parse_error, "empty table");
  Table table;
  for (auto name : split(lines.front().second, ',')) table.header.emplace_back(name);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [number, line] = lines[i];
    const auto cells = split(line, ',');
    if (cells.size() != table.header.size()) {
      parse_fail(number, "expected " + std::to_string(table.header.size()) + " columns, got " +
                             std::to_string(cells.size()));
    }
    std::vector<double> row(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (!parse_double(cells[k], row[k])) {
        parse_fail(number, "invalid number '" + std::string(cells[k]) + "' in column " +
                               table.header[k]);
      }
    }
    table.rows.push_back(std::move(row));
    table.line_numbers.push_back(number);
  }
  return table;
}

int require_column(const Table& table, const std::string& name) {
  const int c = table.column(name);
  if (c < 0) throw FlightError(ErrorCode::parse_error, "missing column: " + name);
  return c;
}

double* airframe_field(AirframeParams& p, const std::string& key) {
  static const std::map<std::string, double AirframeParams::*> top = {
      {"mass", &AirframeParams::mass}, {"S", &AirframeParams::S},
      {"c", &AirframeParams::c},       {"b", &AirframeParams::b},
      {"h_ini", &AirframeParams::h_ini}, {"alpha_warn", &AirframeParams::alpha_warn}};
  static const std::map<std::string, double InertiaTensor::*> inertia = {
      {"I_xx", &InertiaTensor::A}, {"I_yy", &InertiaTensor::B}, {"I_zz", &InertiaTensor::C},
      {"I_yz", &InertiaTensor::D}, {"I_xz", &InertiaTensor::E}, {"I_xy", &InertiaTensor::F}};
  static const std::map<std::string, double AeroForceConstants::*> force = {
      {"C_L0", &AeroForceConstants::C_L0},
      {"C_L_alpha", &AeroForceConstants::C_L_alpha},
      {"C_D0", &AeroForceConstants::C_D0},
      {"K_CD", &AeroForceConstants::K_CD},
      {"C_C_beta", &AeroForceConstants::C_C_beta}};
  static const std::map<std::string, double StabilityDerivatives::*> deriv = {
      {"C_l_beta", &StabilityDerivatives::C_l_beta},
      {"C_l_p", &StabilityDerivatives::C_l_p},
      {"C_l_r", &StabilityDerivatives::C_l_r},
      {"C_l_delta_l", &StabilityDerivatives::C_l_delta_l},
      {"C_l_delta_n", &StabilityDerivatives::C_l_delta_n},
      {"C_m0", &StabilityDerivatives::C_m0},
      {"C_m_alpha", &StabilityDerivatives::C_m_alpha},
      {"C_m_q", &StabilityDerivatives::C_m_q},
      {"C_m_delta_m", &StabilityDerivatives::C_m_delta_m},
      {"C_n_beta", &StabilityDerivatives::C_n_beta},
      {"C_n_p", &StabilityDerivatives::C_n_p},
      {"C_n_r", &StabilityDerivatives::C_n_r},
      {"C_n_delta_l", &StabilityDerivatives::C_n_delta_l},
      {"C_n_delta_n", &StabilityDerivatives::C_n_delta_n}};
  if (auto it = top.find(key); it != top.end()) return &(p.*(it->second));
  if (auto it = inertia.find(key); it != inertia.end()) return &(p.inertia.*(it->second));
  if (auto it = force.find(key); it != force.end()) return &(p.force_constants.*(it->second));
  if (auto it = deriv.find(key); it != deriv.end()) return &(p.derivatives.*(it->second));
  return nullptr;
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_row(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << format_number(values[i]);
  }
  out << '\n';
}

void write_header(std::ostream& out, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out << ',';
    out << names[i];
  }
  out << '\n';
}

}  // namespace

double to_internal(double value, AngleUnit unit) {
  return unit == AngleUnit::deg ? value / kDegPerRad : value;
}

double to_external(double value, AngleUnit unit) {
  return unit == AngleUnit::deg ? value * kDegPerRad : value;
}

const char* angle_suffix(AngleUnit unit) { return unit == AngleUnit::deg ? "deg" : "rad"; }

const std::vector<std::string>& airframe_keys() {
  static const std::vector<std::string> keys = {
      "mass", "S", "c", "b",
      "I_xx", "I_yy", "I_zz", "I_yz", "I_xz", "I_xy",
      "C_L0", "C_L_alpha", "C_D0", "K_CD", "C_C_beta",
      "C_l_beta", "C_l_p", "C_l_r", "C_l_delta_l", "C_l_delta_n",
      "C_m0", "C_m_alpha", "C_m_q", "C_m_delta_m",
      "C_n_beta", "C_n_p", "C_n_r", "C_n_delta_l", "C_n_delta_n",
      "h_ini"};
  return keys;
}

AirframeParams parse_airframe(std::string_view text) {
  AirframeParams params;
  std::map<std::string, std::size_t> seen;
  for (const auto& [number, line] : content_lines(text)) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail(number, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const auto value_text = trim(line.substr(eq + 1));
    double* field = airframe_field(params, key);
    if (field == nullptr) parse_fail(number, "unknown key: " + key);
    if (seen.count(key)) parse_fail(number, "duplicate key: " + key);
    if (!parse_double(value_text, *field)) {
      parse_fail(number, "invalid number '" + std::string(value_text) + "' for key " + key);
    }
    seen[key] = number;
  }
  for (const auto& key : airframe_keys()) {
    if (!seen.count(key)) throw FlightError(ErrorCode::parse_error, "missing key: " + key);
  }
  validate(params);
  return params;
}

std::optional<double> airframe_value(const AirframeParams& params, const std::string& key) {
  AirframeParams copy = params;
  const double* field = airframe_field(copy, key);
  if (field == nullptr) return std::nullopt;
  return *field;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FlightError(ErrorCode::io_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AirframeParams load_airframe(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_airframe(text);
  } catch (const FlightError& e) {
    rethrow_with_context(e, path);
  }
}

std::string format_airframe(const AirframeParams& params) {
  AirframeParams copy = params;
  std::ostringstream out;
  for (const auto& key : airframe_keys()) {
    out << key << " = " << format_number(*airframe_field(copy, key)) << '\n';
  }
  out << "alpha_warn = " << format_number(params.alpha_warn) << '\n';
  return out.str();
}

FlightState parse_state(std::string_view text, AngleUnit unit) {
  static const std::vector<std::string> keys = {"V",   "beta",  "alpha", "p",   "q",   "r",
                                                "phi", "theta", "psi",   "x_g", "y_g", "z_g"};
  FlightState::Vector v = FlightState::Vector::Zero();
  std::vector<bool> seen(keys.size(), false);
  for (const auto& [number, line] : content_lines(text)) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail(number, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const auto value_text = trim(line.substr(eq + 1));
    std::size_t k = 0;
    while (k < keys.size() && keys[k] != key) ++k;
    if (k == keys.size()) parse_fail(number, "unknown key: " + key);
    if (seen[k]) parse_fail(number, "duplicate key: " + key);
    double value = 0.0;
    if (!parse_double(value_text, value)) {
      parse_fail(number, "invalid number '" + std::string(value_text) + "' for key " + key);
    }
    v(static_cast<Eigen::Index>(k)) = (k >= 1 && k <= 8) ? to_internal(value, unit) : value;
    seen[k] = true;
  }
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (!seen[k]) throw FlightError(ErrorCode::parse_error, "missing key: " + keys[k]);
  }
  return FlightState::from_vector(v);
}

FlightState load_state(const std::string& path, AngleUnit unit) {
  const std::string text = read_file(path);
  try {
    return parse_state(text, unit);
  } catch (const FlightError& e) {
    rethrow_with_context(e, path);
  }
}

ControlSchedule parse_control_schedule(std::string_view text, AngleUnit unit,
                                       Interpolation mode) {
  const Table table = parse_table(text);
  const int ct = require_column(table, "t");
  const int cl = require_column(table, "delta_l");
  const int cm = require_column(table, "delta_m");
  const int cn = require_column(table, "delta_n");
  const int cT = require_column(table, "thrust");
  std::vector<double> t;
  std::vector<ControlInputs> u;
  for (const auto& row : table.rows) {
    t.push_back(row[ct]);
    u.push_back({to_internal(row[cl], unit), to_internal(row[cm], unit),
                 to_internal(row[cn], unit), row[cT]});
  }
  if (t.empty()) throw FlightError(ErrorCode::parse_error, "control schedule has no rows");
  try {
    return ControlSchedule(std::move(t), std::move(u), mode);
  } catch (const FlightError& e) {
    throw FlightError(ErrorCode::validation, e.what());
  }
}

ControlSchedule load_control_schedule(const std::string& path, AngleUnit unit,
                                      Interpolation mode) {
  const std::string text = read_file(path);
  try {
    return parse_control_schedule(text, unit, mode);
  } catch (const FlightError& e) {
    rethrow_with_context(e, path);
  }
}

TrajectorySpec parse_trajectory_spec(std::string_view text, AngleUnit unit,
                                     Constraint constraint) {
  const Table table = parse_table(text);
  const int ct = require_column(table, "t");
  const int cx = require_column(table, "x_g");
  const int cy = require_column(table, "y_g");
  const int cz = require_column(table, "z_g");
  const char* wanted = constraint == Constraint::sideslip ? "beta" : "phi";
  const char* other = constraint == Constraint::sideslip ? "phi" : "beta";
  if (table.column(other) >= 0) {
    throw FlightError(ErrorCode::parse_error,
                      std::string("column '") + other + "' does not match the " + wanted +
                          " constraint");
  }
  const int cc = table.column(wanted);
  TrajectorySpec spec;
  spec.constraint = constraint;
  for (const auto& row : table.rows) {
    spec.t.push_back(row[ct]);
    spec.x_g.push_back(row[cx]);
    spec.y_g.push_back(row[cy]);
    spec.z_g.push_back(row[cz]);
    if (cc >= 0) spec.constraint_values.push_back(to_internal(row[cc], unit));
  }
  return spec;
}

TrajectorySpec load_trajectory_spec(const std::string& path, AngleUnit unit,
                                    Constraint constraint) {
  const std::string text = read_file(path);
  try {
    return parse_trajectory_spec(text, unit, constraint);
  } catch (const FlightError& e) {
    rethrow_with_context(e, path);
  }
}

std::vector<std::string> trajectory_columns(AngleUnit unit) {
  const std::string a = angle_suffix(unit);
  const std::string w = a + "_s";
  return {"t_s",     "V_m_s",     "beta_" + a, "alpha_" + a, "p_" + w,      "q_" + w,
          "r_" + w,  "phi_" + a,  "theta_" + a, "psi_" + a,  "x_g_m",       "y_g_m",
          "z_g_m",   "qbar_Pa",   "C_L",       "C_D",        "C_C",         "C_x",
          "C_y",     "C_z",       "C_l",       "C_m",        "C_n",         "F_x_N",
          "F_y_N",   "F_z_N",     "M_x_Nm",    "M_y_Nm",     "M_z_Nm",      "T1_Nm",
          "T2_Nm",   "T3_Nm",     "h_m",       "rho_kg_m3",  "theta_w_" + a, "psi_w_" + a,
          "alpha_f_" + a, "h_dot_m_s", "delta_l_" + a, "delta_m_" + a, "delta_n_" + a,
          "thrust_N"};
}

void write_trajectory_csv(std::ostream& out, const TrajectoryRecord& record, AngleUnit unit) {
  write_header(out, trajectory_columns(unit));
  const auto ang = [unit](double v) { return to_external(v, unit); };
  for (const auto& row : record.rows) {
    const auto& s = row.state;
    const auto& o = row.outputs;
    const auto& k = o.coefficients;
    const auto& l = o.loads;
    write_row(out, {row.t, s.wind.V, ang(s.wind.beta), ang(s.wind.alpha), ang(s.rates.p),
                    ang(s.rates.q), ang(s.rates.r), ang(s.euler.phi), ang(s.euler.theta),
                    ang(s.euler.psi), s.position.x_g, s.position.y_g, s.position.z_g, l.qbar,
                    k.wind.C_L, k.wind.C_D, k.wind.C_C, k.body.C_x, k.body.C_y, k.body.C_z,
                    k.moment.C_l, k.moment.C_m, k.moment.C_n, l.F_x, l.F_y, l.F_z, l.M_x, l.M_y,
                    l.M_z, o.aux.T1, o.aux.T2, o.aux.T3, o.h, o.rho, ang(o.path.theta_w),
                    ang(o.path.psi_w), ang(o.alpha_f), o.h_dot, ang(row.controls.delta_l),
                    ang(row.controls.delta_m), ang(row.controls.delta_n), row.controls.thrust});
  }
}

std::vector<std::string> inverse_columns(AngleUnit unit) {
  const std::string a = angle_suffix(unit);
  const std::string w = a + "_s";
  return {"t_s",         "delta_l_" + a, "delta_m_" + a, "delta_n_" + a, "thrust_N",
          "V_m_s",       "alpha_" + a,   "beta_" + a,    "phi_" + a,     "theta_" + a,
          "psi_" + a,    "p_" + w,       "q_" + w,       "r_" + w,       "C_l_req",
          "C_m_req",     "C_n_req",      "residual",     "iterations",   "consistency",
          "saturation"};
}

void write_inverse_csv(std::ostream& out, const InverseSolution& solution, AngleUnit unit) {
  write_header(out, inverse_columns(unit));
  const auto ang = [unit](double v) { return to_external(v, unit); };
  for (const auto& st : solution.steps) {
    const auto& s = st.state;
    std::ostringstream row;
    write_row(row, {st.t, ang(st.controls.delta_l), ang(st.controls.delta_m),
                    ang(st.controls.delta_n), st.controls.thrust, s.wind.V, ang(s.wind.alpha),
                    ang(s.wind.beta), ang(s.euler.phi), ang(s.euler.theta), ang(s.euler.psi),
                    ang(s.rates.p), ang(s.rates.q), ang(s.rates.r), st.required.C_l,
                    st.required.C_m, st.required.C_n, st.residual_norm,
                    static_cast<double>(st.iterations), st.consistency});
    std::string line = row.str();
    line.pop_back();
    std::string flags;
    const auto add = [&flags](bool on, const char* name) {
      if (!on) return;
      if (!flags.empty()) flags += '|';
      flags += name;
    };
    add(st.flags.delta_l, "delta_l");
    add(st.flags.delta_m, "delta_m");
    add(st.flags.delta_n, "delta_n");
    add(st.flags.negative_thrust, "thrust");
    add(st.flags.stall, "stall");
    out << line << ',' << (flags.empty() ? "-" : flags) << '\n';
  }
}

void write_atmosphere_table(std::ostream& out, double h_min, double h_max, double step) {
  if (!(step > 0.0) || !(h_max >= h_min)) {
    throw FlightError(ErrorCode::invalid_argument, "atmosphere grid needs step > 0, h_max >= h_min");
  }
  const auto count = static_cast<std::size_t>(std::floor((h_max - h_min) / step + 1e-9)) + 1;
  out << "h_m,rho_kg_m3,sigma,theta_K,P_Pa,a_m_s\n";
  char buf[160];
  for (std::size_t i = 0; i < count; ++i) {
    const double h = h_min + static_cast<double>(i) * step;
    const auto s = atmosphere::sample(h);
    std::snprintf(buf, sizeof buf, "%.3f,%.7f,%.7f,%.4f,%.3f,%.4f\n", h, s.rho, s.sigma,
                  s.theta, s.P, s.a);
    out << buf;
  }
}

}  // namespace asymflight::io
