#include "sattrack/filters.hpp"

#include <cmath>
#include <string>

#include "sattrack/errors.hpp"

namespace sattrack {

FilterModel make_filter_model(const Matrix4& F, const RowVector4& H, const Matrix4& Q, double R) {
    if (!is_finite(F)) throw ValidationError("filter model: F has non-finite entries");
    if (!(R > 0.0)) throw ValidationError("filter model: R must be > 0");
    if (max_abs_diff(Q, transpose(Q)) > 1e-12) throw ValidationError("filter model: Q must be symmetric");
    if (!is_psd(Q)) throw ValidationError("filter model: Q must be PSD");
    FilterModel m;
    m.F = F;
    m.H = H;
    m.Q = Q;
    m.R = R;
    return m;
}

std::pair<Vector4, Matrix4> ckf_predict(const Vector4& x_post, const Matrix4& P_post,
                                        const FilterModel& m) {
    Vector4 x = vec_add(mat_vec(m.F, x_post), m.u_s);
    Matrix4 P = symmetrize(mat_add(mat_mul(mat_mul(m.F, P_post), transpose(m.F)), m.Q));
    return {x, P};
}

FilterEstimate ckf_update(const Vector4& x_pred, const Matrix4& P_pred, const FilterModel& m,
                          double y) {
    const RowVector4 HP = row_mat(m.H, P_pred);
    const double T = row_dot(HP, col_of(m.H)) + m.R;
    if (T <= 1e-14)
        throw DegenerateInnovation("ckf_update: innovation variance " + std::to_string(T) +
                                   " below floor");
    FilterEstimate est;
    est.x_pred = x_pred;
    est.P_pred = P_pred;
    est.innovation = y - (row_dot(m.H, x_pred) + m.u_o);
    const Vector4 PHt = mat_vec(P_pred, col_of(m.H));
    est.gain = vec_scale(PHt, 1.0 / T);
    est.x_post = vec_add(x_pred, vec_scale(est.gain, est.innovation));
    // Subtractive covariance update, then explicit symmetrization.
    est.P_post = symmetrize(mat_sub(P_pred, scale(outer(PHt, PHt), 1.0 / T)));
    return est;
}

MukfStep mukf_step(const Vector4& x_bar, const Matrix4& P, const FilterModel& m, double y) {
    const Vector4 Ht = col_of(m.H);
    const Matrix4 S = scale(outer(Ht, Ht), 1.0 / m.R);
    const Matrix4 M = symmetrize(invert(mat_add(invert(P), S)));
    const Vector4 z = vec_scale(Ht, y / m.R);
    MukfStep out;
    out.x_m = vec_add(x_bar, mat_vec(M, vec_sub(z, mat_vec(S, x_bar))));
    out.M = M;
    const Matrix4 BQBt = mat_mul(mat_mul(m.B, m.Q), transpose(m.B));
    out.P_plus = symmetrize(mat_add(mat_mul(mat_mul(m.F, M), transpose(m.F)), BQBt));
    out.x_bar_plus = vec_add(mat_vec(m.F, out.x_m), m.u_s);
    return out;
}

namespace {
// One application of the prediction-covariance Riccati map.
Matrix4 riccati_map(const Matrix4& P, const FilterModel& m) {
    const Vector4 PHt = mat_vec(P, col_of(m.H));
    const double T = row_dot(m.H, PHt) + m.R;
    const Matrix4 updated = mat_sub(P, scale(outer(PHt, PHt), 1.0 / T));
    return symmetrize(mat_add(mat_mul(mat_mul(m.F, updated), transpose(m.F)), m.Q));
}
}  // namespace

SteadyState solve_are(const FilterModel& m, const Matrix4& tau, double tol, int max_iter) {
    if (!(tol > 0.0)) throw ValidationError("solve_are: tol must be > 0");
    Matrix4 P = symmetrize(tau);
    double residual = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        const Matrix4 next = riccati_map(P, m);
        residual = max_abs_diff(next, P);
        P = next;
        if (residual < tol) {
            SteadyState ss;
            ss.P_inf = P;
            const Vector4 PHt = mat_vec(P, col_of(m.H));
            const double T = row_dot(m.H, PHt) + m.R;
            ss.K_inf = vec_scale(mat_vec(m.F, PHt), 1.0 / T);
            ss.rho = spectral_radius(mat_sub(m.F, outer(ss.K_inf, col_of(m.H))));
            ss.iterations = it;
            return ss;
        }
    }
    throw NoConvergence("solve_are: no fixed point within " + std::to_string(max_iter) +
                            " iterations (last residual " + std::to_string(residual) + ")",
                        residual);
}

std::pair<Vector4, double> steady_predict(const Vector4& x_hat, const Vector4& K_inf, double e,
                                          const FilterModel& m) {
    Vector4 x_next = vec_add(vec_add(mat_vec(m.F, x_hat), vec_scale(K_inf, e)), m.u_s);
    return {x_next, row_dot(m.H, x_next) + m.u_o};
}

}  // namespace sattrack
