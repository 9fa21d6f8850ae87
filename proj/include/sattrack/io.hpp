#pragma once

#include <string>
#include <vector>

#include "sattrack/filters.hpp"
#include "sattrack/harness.hpp"
#include "sattrack/metrics.hpp"

namespace sattrack {

// Flat JSON configuration. Recognized keys (all optional; defaults below):
//   R (1.0), omega (1.0), h (0.01)            numbers
//   mtype ("type1")                            "type1" | "type2"
//   n (1000), phi (10)                         integers
//   seed (1)                                   integer or decimal string
//   phi_var (0.1), psi_var (0.5)               numbers
//   noise_scale (1.0)                          number
//   delta_q (0), tau_p0 (0.1)                  number c meaning c*I, or a
//                                              row-major array of 16 numbers
//   x0_mode ("fixed")                          "fixed" | "sampled"
//   x0_fixed ([0.1,0,0,0]), x0_mean ([0,..])   arrays of 4 numbers
//   truth_model ("linear")                     "linear" | "nonlinear"
// Unknown keys and wrong types raise ParseError naming the key; invariant
// violations raise ValidationError.
ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

MeasurementType parse_mtype(const std::string& s);  // "type1" / "type2"
std::string mtype_name(MeasurementType t);

// Round to 4 decimal places, half away from zero (table rendering).
double round4(double x);

// Per-step trajectory table for one run. Header row is exactly:
// k,t,x1,x2,x3,x4,ckf_x1,ckf_x2,ckf_x3,ckf_x4,mukf_x1,mukf_x2,mukf_x3,mukf_x4,y,innov
std::string trajectory_csv(const RunResult& run, const ExperimentConfig& cfg);

// Per-step error table: k,beta1..beta4,gamma1..gamma4.
std::string error_csv(const ErrorTrace& trace);

// Per-run MSEE table (information-form values), GitHub Markdown, one row per
// state, one column per run plus the average, 4-decimal rounding.
std::string msee_table_markdown(const std::vector<MseeRecord>& runs);

// Combined AMSEE comparison across both measurement types.
std::string amsee_table_markdown(const AmseeRecord& type1, const AmseeRecord& type2);

// Human-readable steady-state report.
std::string are_report_text(const SteadyState& ss, MeasurementType t, double tol);

// Writes content to path, throwing Error with the path on failure.
void write_file(const std::string& path, const std::string& content);

}  // namespace sattrack
