#pragma once

#include <vector>

#include "sattrack/matrix.hpp"

namespace sattrack {

// Per-step elementwise absolute estimation errors for both filters.
// beta_k tracks the time-varying filter, gamma_k the information-form one.
// The absolute value is kept even though the squaring below makes it
// redundant; it costs nothing and matches how the errors are defined.
struct ErrorTrace {
    std::vector<Vector4> beta;
    std::vector<Vector4> gamma;
};

// Per-run mean square estimation error, one entry per state.
struct MseeRecord {
    Vector4 kappa;  // time-varying filter
    Vector4 Gamma;  // information-form filter
    int run_index = 0;
};

// MSEE averaged across Monte Carlo runs.
struct AmseeRecord {
    Vector4 Xi_kappa;
    Vector4 Xi_Gamma;
    int phi = 0;  // number of runs averaged
};

// Elementwise |truth - estimate| for both estimate sequences.
// Throws LengthMismatch unless all three sequences have equal length.
ErrorTrace collect_errors(const std::vector<Vector4>& truth, const std::vector<Vector4>& est_ckf,
                          const std::vector<Vector4>& est_mukf);

// Per-state mean of squared errors over the trace. Throws EmptyTrace on an
// empty trace.
MseeRecord msee(const ErrorTrace& trace);

// Per-state mean of kappa and Gamma across runs. Throws EmptySequence on an
// empty input.
AmseeRecord amsee(const std::vector<MseeRecord>& records);

// Normalized sample autocorrelation of a scalar series at lags 1..max_lag
// (lag 0, fixed at 1, is prepended when include_lag0 is set). The series is
// centered on its sample mean. Throws ValidationError unless the series is
// longer than max_lag, DegenerateSeries if the sample variance is
// numerically zero.
std::vector<double> innovation_autocorr(const std::vector<double>& innovations, int max_lag,
                                        bool include_lag0 = false);

}  // namespace sattrack
