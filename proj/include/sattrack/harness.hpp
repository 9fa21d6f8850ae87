#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sattrack/filters.hpp"
#include "sattrack/matrix.hpp"
#include "sattrack/metrics.hpp"
#include "sattrack/orbit.hpp"

namespace sattrack {

// How the truth trajectory's initial state is chosen.
//   Fixed:   truth starts at x0_fixed exactly (the filters still start from
//            x0_mean with covariance tau_p0, so the initial estimation error
//            is x0_fixed - x0_mean).
//   Sampled: truth starts at a draw from N(x0_mean, tau_p0), matching the
//            filter prior exactly.
enum class X0Mode { Fixed, Sampled };

// Truth propagation: the discrete linear model F, or the nonlinear polar
// dynamics integrated by RK4 (validation mode exposing linearization error).
enum class TruthModel { Linear, Nonlinear };

struct ExperimentConfig {
    // Orbit geometry.
    double R = 1.0;
    double omega = 1.0;
    double h = 0.01;
    // Measurement channel.
    MeasurementType mtype = MeasurementType::Type1;
    double phi_var = 0.1;  // Type1 channel variance
    double psi_var = 0.5;  // Type2 channel variance
    // Run shape.
    int n = 1000;  // steps per run
    int phi = 10;  // Monte Carlo runs
    std::uint64_t seed = 1;
    // Process noise covariance (zero by default) and initial covariance.
    Matrix4 delta_q = Matrix4::zero();
    Matrix4 tau_p0 = Matrix4::diag(0.1, 0.1, 0.1, 0.1);
    // Initial-state handling.
    X0Mode x0_mode = X0Mode::Fixed;
    Vector4 x0_fixed{{0.1, 0.0, 0.0, 0.0}};
    Vector4 x0_mean{};
    // Scales the realized measurement-noise draws without touching the
    // filter's R (0 gives noise-free data against an unchanged filter model).
    double noise_scale = 1.0;
    TruthModel truth_model = TruthModel::Linear;
};

// Throws ValidationError on any violated invariant.
void validate(const ExperimentConfig& cfg);

// Everything derived from the config that the filters need.
struct DerivedModel {
    OrbitParams orbit;
    Matrix4 A;
    Matrix4 F;
    Measurement meas;   // H row and channel variance for cfg.mtype
    FilterModel model;  // F, H, Q = delta_q, R = channel variance
};
DerivedModel derive_model(const ExperimentConfig& cfg);

struct TruthData {
    std::vector<Vector4> states;        // x_1 .. x_N
    std::vector<double> measurements;   // y_1 .. y_N
};

// Generates one truth trajectory and its measurement sequence from the
// given stream seed (independent init/process/measurement sub-streams are
// derived from it by role tag).
TruthData generate_truth(const ExperimentConfig& cfg, std::uint64_t stream_seed);

// Full per-run record: truth, both filters in lockstep on the same
// measurements, the error trace, the run MSEE, plus any runtime notes
// (e.g. jitter-floor applications).
struct RunResult {
    TruthData truth;
    std::vector<FilterEstimate> ckf;
    std::vector<MukfStep> mukf;
    ErrorTrace trace;
    MseeRecord msee;
    std::vector<std::string> log;
};

// Executes run j of the experiment; its streams are seeded from
// cfg.seed ^ run_index, so every run is individually reproducible.
RunResult run_once(const ExperimentConfig& cfg, std::uint64_t run_index);

struct MonteCarloResult {
    AmseeRecord amsee;
    std::vector<MseeRecord> per_run;
};

// Runs phi independent replicas (run indices 1..phi) and aggregates.
MonteCarloResult monte_carlo(const ExperimentConfig& cfg);

// Information-form step with a jitter fallback: when P is numerically
// singular the step is retried once with P + 1e-12*I and the event is
// appended to the log. Keeps the information form defined when zero process
// noise drives P toward singularity without materially changing estimates.
MukfStep mukf_step_jittered(const Vector4& x_bar, Matrix4& P, const FilterModel& m, double y,
                            int step_index, std::vector<std::string>& log);

}  // namespace sattrack
