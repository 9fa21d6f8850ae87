#include "sattrack/metrics.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "sattrack/errors.hpp"

namespace sattrack {

ErrorTrace collect_errors(const std::vector<Vector4>& truth, const std::vector<Vector4>& est_ckf,
                          const std::vector<Vector4>& est_mukf) {
    if (truth.size() != est_ckf.size() || truth.size() != est_mukf.size())
        throw LengthMismatch("collect_errors: sequence lengths differ (" +
                             std::to_string(truth.size()) + ", " + std::to_string(est_ckf.size()) +
                             ", " + std::to_string(est_mukf.size()) + ")");
    ErrorTrace trace;
    trace.beta.reserve(truth.size());
    trace.gamma.reserve(truth.size());
    for (std::size_t k = 0; k < truth.size(); ++k) {
        Vector4 b, g;
        for (std::size_t i = 0; i < 4; ++i) {
            b[i] = std::fabs(truth[k][i] - est_ckf[k][i]);
            g[i] = std::fabs(truth[k][i] - est_mukf[k][i]);
        }
        trace.beta.push_back(b);
        trace.gamma.push_back(g);
    }
    return trace;
}

MseeRecord msee(const ErrorTrace& trace) {
    if (trace.beta.empty() || trace.beta.size() != trace.gamma.size())
        throw EmptyTrace("msee: empty or inconsistent error trace");
    MseeRecord rec;
    for (std::size_t k = 0; k < trace.beta.size(); ++k) {
        for (std::size_t i = 0; i < 4; ++i) {
            rec.kappa[i] += trace.beta[k][i] * trace.beta[k][i];
            rec.Gamma[i] += trace.gamma[k][i] * trace.gamma[k][i];
        }
    }
    const double inv_n = 1.0 / static_cast<double>(trace.beta.size());
    rec.kappa = vec_scale(rec.kappa, inv_n);
    rec.Gamma = vec_scale(rec.Gamma, inv_n);
    return rec;
}

AmseeRecord amsee(const std::vector<MseeRecord>& records) {
    if (records.empty()) throw EmptySequence("amsee: no runs to average");
    AmseeRecord out;
    for (const MseeRecord& r : records) {
        out.Xi_kappa = vec_add(out.Xi_kappa, r.kappa);
        out.Xi_Gamma = vec_add(out.Xi_Gamma, r.Gamma);
    }
    const double inv_phi = 1.0 / static_cast<double>(records.size());
    out.Xi_kappa = vec_scale(out.Xi_kappa, inv_phi);
    out.Xi_Gamma = vec_scale(out.Xi_Gamma, inv_phi);
    out.phi = static_cast<int>(records.size());
    return out;
}

std::vector<double> innovation_autocorr(const std::vector<double>& innovations, int max_lag,
                                        bool include_lag0) {
    const std::size_t n = innovations.size();
    if (max_lag < 1) throw ValidationError("innovation_autocorr: max_lag must be >= 1");
    if (n <= static_cast<std::size_t>(max_lag))
        throw ValidationError("innovation_autocorr: series length must exceed max_lag");
    double mean = 0.0;
    for (double x : innovations) mean += x;
    mean /= static_cast<double>(n);
    double denom = 0.0;
    for (double x : innovations) denom += (x - mean) * (x - mean);
    if (denom / static_cast<double>(n) < 1e-300)
        throw DegenerateSeries("innovation_autocorr: sample variance is numerically zero");
    std::vector<double> rho;
    if (include_lag0) rho.push_back(1.0);
    for (int lag = 1; lag <= max_lag; ++lag) {
        double num = 0.0;
        for (std::size_t k = 0; k + static_cast<std::size_t>(lag) < n; ++k)
            num += (innovations[k] - mean) * (innovations[k + static_cast<std::size_t>(lag)] - mean);
        rho.push_back(num / denom);
    }
    return rho;
}

}  // namespace sattrack
