#include "sattrack/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sattrack/errors.hpp"

namespace sattrack {

using nlohmann::json;

namespace {

double need_number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ParseError("config key '" + key + "' must be a number");
  return j.get<double>();
}

int need_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ParseError("config key '" + key + "' must be an integer");
  return j.get<int>();
}

std::uint64_t need_seed(const json& j, const std::string& key) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    auto v = j.get<std::int64_t>();
    if (v < 0) throw ParseError("config key '" + key + "' must be non-negative");
    return static_cast<std::uint64_t>(v);
  }
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("config key '" + key + "' string must be decimal digits");
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ParseError("config key '" + key + "' is out of range");
    }
  }
  throw ParseError("config key '" + key + "' must be an integer or decimal string");
}

std::string need_string(const json& j, const std::string& key) {
  if (!j.is_string()) throw ParseError("config key '" + key + "' must be a string");
  return j.get<std::string>();
}

Vector4 need_vec4(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 4)
    throw ParseError("config key '" + key + "' must be an array of 4 numbers");
  Vector4 v{};
  for (int i = 0; i < 4; ++i) {
    if (!j[i].is_number())
      throw ParseError("config key '" + key + "' must be an array of 4 numbers");
    v.e[static_cast<std::size_t>(i)] = j[i].get<double>();
  }
  return v;
}

// Scalar c -> c*I; array of 16 -> row-major matrix.
Matrix4 need_mat4(const json& j, const std::string& key) {
  if (j.is_number()) {
    const double c = j.get<double>();
    return Matrix4::diag(c, c, c, c);
  }
  if (j.is_array() && j.size() == 16) {
    std::array<double, 16> a{};
    for (int i = 0; i < 16; ++i) {
      if (!j[i].is_number())
        throw ParseError("config key '" + key + "' array entries must be numbers");
      a[static_cast<std::size_t>(i)] = j[i].get<double>();
    }
    return Matrix4::of(a);
  }
  throw ParseError("config key '" + key + "' must be a number or an array of 16 numbers");
}

std::string fmt(const char* format, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, x);
  return buf;
}

std::string cell4(double x) { return fmt("%.4f", round4(x)); }

}  // namespace

MeasurementType parse_mtype(const std::string& s) {
  if (s == "type1") return MeasurementType::Type1;
  if (s == "type2") return MeasurementType::Type2;
  throw ParseError("mtype must be 'type1' or 'type2', got '" + s + "'");
}

std::string mtype_name(MeasurementType t) {
  return t == MeasurementType::Type1 ? "type1" : "type2";
}

ExperimentConfig parse_config_text(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config root must be a JSON object");

  static const std::set<std::string> known = {
      "R",        "omega",   "h",       "mtype",       "n",
      "phi",      "seed",    "phi_var", "psi_var",     "noise_scale",
      "delta_q",  "tau_p0",  "x0_mode", "x0_fixed",    "x0_mean",
      "truth_model"};
  for (const auto& [key, val] : j.items()) {
    (void)val;
    if (!known.count(key)) throw ParseError("unknown config key '" + key + "'");
  }

  ExperimentConfig cfg;
  if (j.contains("R")) cfg.R = need_number(j["R"], "R");
  if (j.contains("omega")) cfg.omega = need_number(j["omega"], "omega");
  if (j.contains("h")) cfg.h = need_number(j["h"], "h");
  if (j.contains("mtype")) cfg.mtype = parse_mtype(need_string(j["mtype"], "mtype"));
  if (j.contains("n")) cfg.n = need_int(j["n"], "n");
  if (j.contains("phi")) cfg.phi = need_int(j["phi"], "phi");
  if (j.contains("seed")) cfg.seed = need_seed(j["seed"], "seed");
  if (j.contains("phi_var")) cfg.phi_var = need_number(j["phi_var"], "phi_var");
  if (j.contains("psi_var")) cfg.psi_var = need_number(j["psi_var"], "psi_var");
  if (j.contains("noise_scale")) cfg.noise_scale = need_number(j["noise_scale"], "noise_scale");
  if (j.contains("delta_q")) cfg.delta_q = need_mat4(j["delta_q"], "delta_q");
  if (j.contains("tau_p0")) cfg.tau_p0 = need_mat4(j["tau_p0"], "tau_p0");
  if (j.contains("x0_mode")) {
    const std::string m = need_string(j["x0_mode"], "x0_mode");
    if (m == "fixed")
      cfg.x0_mode = X0Mode::Fixed;
    else if (m == "sampled")
      cfg.x0_mode = X0Mode::Sampled;
    else
      throw ParseError("x0_mode must be 'fixed' or 'sampled', got '" + m + "'");
  }
  if (j.contains("x0_fixed")) cfg.x0_fixed = need_vec4(j["x0_fixed"], "x0_fixed");
  if (j.contains("x0_mean")) cfg.x0_mean = need_vec4(j["x0_mean"], "x0_mean");
  if (j.contains("truth_model")) {
    const std::string m = need_string(j["truth_model"], "truth_model");
    if (m == "linear")
      cfg.truth_model = TruthModel::Linear;
    else if (m == "nonlinear")
      cfg.truth_model = TruthModel::Nonlinear;
    else
      throw ParseError("truth_model must be 'linear' or 'nonlinear', got '" + m + "'");
  }

  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

double round4(double x) {
  return static_cast<double>(std::llround(x * 1e4)) / 1e4;
}

std::string trajectory_csv(const RunResult& run, const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "k,t,x1,x2,x3,x4,ckf_x1,ckf_x2,ckf_x3,ckf_x4,"
         "mukf_x1,mukf_x2,mukf_x3,mukf_x4,y,innov\n";
  const std::size_t n = run.truth.measurements.size();
  for (std::size_t k = 1; k <= n; ++k) {
    const Vector4& x = run.truth.states[k - 1];
    const Vector4& c = run.ckf[k - 1].x_post;
    const Vector4& m = run.mukf[k - 1].x_m;
    out << k << ',' << fmt("%.10g", static_cast<double>(k) * cfg.h);
    for (double v : x.e) out << ',' << fmt("%.10g", v);
    for (double v : c.e) out << ',' << fmt("%.10g", v);
    for (double v : m.e) out << ',' << fmt("%.10g", v);
    out << ',' << fmt("%.10g", run.truth.measurements[k - 1]);
    out << ',' << fmt("%.10g", run.ckf[k - 1].innovation) << '\n';
  }
  return out.str();
}

std::string error_csv(const ErrorTrace& trace) {
  std::ostringstream out;
  out << "k,beta1,beta2,beta3,beta4,gamma1,gamma2,gamma3,gamma4\n";
  for (std::size_t k = 0; k < trace.beta.size(); ++k) {
    out << (k + 1);
    for (double v : trace.beta[k].e) out << ',' << fmt("%.10g", v);
    for (double v : trace.gamma[k].e) out << ',' << fmt("%.10g", v);
    out << '\n';
  }
  return out.str();
}

std::string msee_table_markdown(const std::vector<MseeRecord>& runs) {
  if (runs.empty()) throw EmptySequence("msee_table_markdown: no runs");
  std::ostringstream out;
  out << "| State |";
  for (const auto& r : runs) out << " Run " << r.run_index << " |";
  out << " **Averaged** |\n|---|";
  for (std::size_t i = 0; i < runs.size(); ++i) out << "---|";
  out << "---|\n";
  for (int s = 0; s < 4; ++s) {
    out << "| x" << (s + 1) << " |";
    double sum = 0.0;
    for (const auto& r : runs) {
      const double v = r.Gamma.e[static_cast<std::size_t>(s)];
      sum += v;
      out << ' ' << cell4(v) << " |";
    }
    out << " **" << cell4(sum / static_cast<double>(runs.size())) << "** |\n";
  }
  return out.str();
}

std::string amsee_table_markdown(const AmseeRecord& type1, const AmseeRecord& type2) {
  std::ostringstream out;
  out << "| State | Type 1 AMSEE (centralized) | Type 1 AMSEE (information) |"
         " Type 2 AMSEE (centralized) | Type 2 AMSEE (information) |\n";
  out << "|---|---|---|---|---|\n";
  for (int s = 0; s < 4; ++s) {
    const auto i = static_cast<std::size_t>(s);
    out << "| x" << (s + 1) << " | " << cell4(type1.Xi_kappa.e[i]) << " | "
        << cell4(type1.Xi_Gamma.e[i]) << " | " << cell4(type2.Xi_kappa.e[i])
        << " | " << cell4(type2.Xi_Gamma.e[i]) << " |\n";
  }
  return out.str();
}

std::string are_report_text(const SteadyState& ss, MeasurementType t, double tol) {
  std::ostringstream out;
  out << "steady-state solution (" << mtype_name(t) << ", tol " << fmt("%.3g", tol)
      << ", " << ss.iterations << " iterations)\n";
  out << "P_inf =\n";
  for (int r = 0; r < 4; ++r) {
    out << " ";
    for (int c = 0; c < 4; ++c) out << ' ' << fmt("% .10g", ss.P_inf.at(r, c));
    out << '\n';
  }
  out << "K_inf =\n ";
  for (double v : ss.K_inf.e) out << ' ' << fmt("% .10g", v);
  out << '\n';
  out << "closed-loop spectral radius rho = " << fmt("%.10g", ss.rho) << '\n';
  out << (ss.rho < 1.0 ? "predictor is stable (rho < 1)\n"
                       : "WARNING: predictor is NOT stable (rho >= 1)\n");
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open output file: " + path);
  out << content;
  if (!out) throw Error("failed writing output file: " + path);
}

}  // namespace sattrack
